#include "spider/quadrature.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>

namespace spider {

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b, double abs_tol) {
    if (!(b > a)) throw std::invalid_argument("integrate: need b > a");
    if (!(abs_tol > 0)) throw std::invalid_argument("integrate: tolerance must be positive");

    boost::math::quadrature::tanh_sinh<double> integrator(15);
    double error = 0.0, l1 = 0.0;
    std::size_t levels = 0;
    const double value = integrator.integrate(f, a, b, 1e-12, &error, &l1, &levels);
    // boost reports a relative-to-L1 error estimate; convert to absolute.
    const double abs_err = error * (l1 > 0 ? l1 : 1.0);
    if (!std::isfinite(value) || abs_err > abs_tol)
        throw QuadratureError("integrate: tolerance " + std::to_string(abs_tol) +
                                  " not certified; achieved error estimate " + std::to_string(abs_err),
                              abs_err);
    return {value, abs_err};
}

double exponential_tail_cutoff(double decay_rate, int poly_degree, double tail_bound) {
    if (!(decay_rate > 0)) throw std::invalid_argument("exponential_tail_cutoff: decay rate must be positive");
    double y = 1.0;
    while (std::exp(-decay_rate * y) * std::pow(1.0 + y, poly_degree) > tail_bound) {
        y *= 1.5;
        if (y > 1e6) break;  // e^-x wins eventually; this is unreachable in practice
    }
    return y;
}

}  // namespace spider
