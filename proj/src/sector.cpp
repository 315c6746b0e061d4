#include "spider/sector.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace spider {

SpiderConfig sector_weights(const std::function<double(double)>& angle_cdf,
                            const std::vector<double>& boundaries) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    constexpr double tol = 1e-12;

    if (boundaries.size() < 2) throw std::invalid_argument("sector_weights: need at least one sector");
    if (std::fabs(boundaries.front()) > tol || std::fabs(boundaries.back() - two_pi) > tol)
        throw std::invalid_argument("sector_weights: boundaries must start at 0 and end at 2*pi");
    for (size_t i = 1; i < boundaries.size(); ++i)
        if (!(boundaries[i] > boundaries[i - 1]))
            throw std::invalid_argument("sector_weights: boundaries must be strictly increasing");
    if (std::fabs(angle_cdf(boundaries.front())) > tol || std::fabs(angle_cdf(boundaries.back()) - 1.0) > tol)
        throw std::invalid_argument("sector_weights: cdf must run from 0 at angle 0 to 1 at 2*pi");

    const size_t n_sectors = boundaries.size() - 1;
    std::vector<double> w(n_sectors);
    for (size_t i = 0; i < n_sectors; ++i) {
        w[i] = angle_cdf(boundaries[i + 1]) - angle_cdf(boundaries[i]);
        if (w[i] < -tol) throw std::invalid_argument("sector_weights: cdf is not nondecreasing");
        if (w[i] <= tol)
            throw std::invalid_argument("sector_weights: sector " + std::to_string(i + 1) +
                                        " has zero probability");
    }

    std::vector<Rational> beta(n_sectors);
    Rational partial(0);
    for (size_t i = 0; i + 1 < n_sectors; ++i) {
        beta[i] = Rational::approximate(w[i], 1e-9);
        partial += beta[i];
    }
    beta[n_sectors - 1] = Rational(1) - partial;
    if (beta[n_sectors - 1] <= Rational(0) ||
        std::fabs(beta[n_sectors - 1].to_double() - w[n_sectors - 1]) > 1e-9)
        throw std::invalid_argument("sector_weights: weights could not be closed to an exact unit sum");
    return SpiderConfig(std::move(beta));
}

}  // namespace spider
