#ifndef SPIDER_QUADRATURE_HPP
#define SPIDER_QUADRATURE_HPP

#include <functional>
#include <stdexcept>
#include <string>

namespace spider {

/// Raised when adaptive quadrature cannot certify the requested absolute
/// tolerance; carries the achieved error estimate.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double achieved)
        : std::runtime_error(what), achieved_error(achieved) {}
    double achieved_error;
};

struct QuadratureResult {
    double value;
    double error_estimate;
};

/// Adaptive (tanh-sinh) integration of f over [a, b], certified against an
/// absolute tolerance. Integrable endpoint singularities such as y^(2nu+1)
/// at 0 are handled. Throws QuadratureError when the estimate exceeds the
/// tolerance.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double abs_tol = 1e-9);

/// Smallest cutoff Y with exp(-decay_rate * Y) * (1+Y)^poly_degree below
/// `tail_bound`, for truncating [0, inf) integrands dominated by an
/// exponential tail times a slowly varying factor.
double exponential_tail_cutoff(double decay_rate, int poly_degree = 8, double tail_bound = 1e-16);

}  // namespace spider

#endif
