#include "spider/bessel_law.hpp"

#include "spider/bessel_k.hpp"

#include <cmath>
#include <stdexcept>

namespace spider {

namespace {
// Below this value of z = y sqrt(2 lambda) the two-series small-argument form
// is used; K_nu itself is ill-conditioned to assemble there (0 * inf pairing
// at double-exponential quadrature nodes).
constexpr double kSmallArg = 1e-4;
// e^-z underflows any integrand contribution long before this.
constexpr double kHugeArg = 600.0;
}  // namespace

double BesselLaw::speed_density(double y) const {
    if (!(y > 0.0)) throw std::invalid_argument("speed_density: y must be positive");
    return 2.0 * std::pow(y, 2.0 * nu() + 1.0);
}

double BesselLaw::scale(double x) const {
    if (x < 0.0) throw std::invalid_argument("scale: x must be nonnegative");
    if (x == 0.0) return 0.0;
    return -std::pow(x, -2.0 * nu()) / (2.0 * nu());
}

double BesselLaw::phi(double lambda, double y) const {
    if (!(lambda > 0.0)) throw std::invalid_argument("phi: lambda must be positive");
    if (!(y > 0.0)) throw std::invalid_argument("phi: y must be positive");
    return std::pow(y, -nu()) * bessel_k(nu(), y * std::sqrt(2.0 * lambda));
}

double BesselLaw::phi_origin(double lambda) const {
    if (!(lambda > 0.0)) throw std::invalid_argument("phi_origin: lambda must be positive");
    const double v = nu();
    return std::tgamma(-v) * std::pow(2.0, -v / 2.0 - 1.0) * std::pow(lambda, v / 2.0);
}

double phi_normalized(const BesselLaw& law, double lambda, double y) {
    if (!(lambda > 0.0)) throw std::invalid_argument("phi_normalized: lambda must be positive");
    if (y < 0.0) throw std::invalid_argument("phi_normalized: y must be nonnegative");
    if (y == 0.0) return 1.0;

    const double v = law.nu();
    const double s = std::sqrt(2.0 * lambda);
    const double z = y * s;
    if (z >= kHugeArg) return 0.0;

    if (z < kSmallArg) {
        // phi_hat = S+(z) + [Gamma(nu)/Gamma(-nu)] (s/2)^(-2nu) y^(-2nu) S-(z),
        // S+-(z) = sum_m (z^2/4)^m / (m! (1 +- nu)_m).
        const double q = z * z / 4.0;
        double splus = 1.0, sminus = 1.0, tp = 1.0, tm = 1.0;
        for (int m = 1; m <= 3; ++m) {
            tp *= q / (m * (m + v));
            tm *= q / (m * (m - v));
            splus += tp;
            sminus += tm;
        }
        const double ratio = std::tgamma(v) / std::tgamma(-v);
        return splus + ratio * std::pow(s / 2.0, -2.0 * v) * std::pow(y, -2.0 * v) * sminus;
    }
    return law.phi(lambda, y) / law.phi_origin(lambda);
}

double c_normalized(const BesselLaw& law, double lambda) {
    if (!(lambda > 0.0)) throw std::invalid_argument("c_normalized: lambda must be positive");
    const double v = law.nu();
    return std::pow(2.0, v + 1.0) * std::tgamma(v + 1.0) / std::tgamma(-v) * std::pow(lambda, -v);
}

}  // namespace spider
