#ifndef SPIDER_BESSEL_LAW_HPP
#define SPIDER_BESSEL_LAW_HPP

#include "spider/spider_config.hpp"

namespace spider {

/// Radial ingredients of a reflecting Bessel diffusion of order nu in (-1,0):
/// speed density m'(y) = 2 y^(2nu+1), scale S(x) = -x^(-2nu)/(2nu), and the
/// decreasing eigenfunction phi_lambda(y) = y^(-nu) K_nu(y sqrt(2 lambda)).
class BesselLaw {
public:
    explicit BesselLaw(BesselOrder order) : order_(std::move(order)) {}

    const BesselOrder& order() const { return order_; }
    double nu() const { return order_.nu_double(); }

    /// m'(y) = 2 y^(2nu+1), y > 0.
    double speed_density(double y) const;

    /// S(x) = -x^(-2nu) / (2nu), S(0) = 0.
    double scale(double x) const;

    /// Unnormalized phi_lambda(y) = y^(-nu) K_nu(y sqrt(2 lambda)), y > 0.
    double phi(double lambda, double y) const;

    /// The y -> 0 limit of phi: Gamma(-nu) 2^(-nu/2-1) lambda^(nu/2).
    double phi_origin(double lambda) const;

private:
    BesselOrder order_;
};

/// Hitting-time transform E_y[exp(-lambda H_0)] = phi_lambda(y)/phi_lambda(0+),
/// in (0,1], equal to 1 at y = 0 and strictly decreasing in y.
double phi_normalized(const BesselLaw& law, double lambda, double y);

/// Minus the scale-derivative at the origin of the normalized phi:
///   c_hat(lambda) = 2^(nu+1) Gamma(nu+1)/Gamma(-nu) * lambda^(-nu),
/// so c_hat(lambda+z)/c_hat(lambda) = ((lambda+z)/lambda)^(-nu).
double c_normalized(const BesselLaw& law, double lambda);

}  // namespace spider

#endif
