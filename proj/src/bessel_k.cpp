#include "spider/bessel_k.hpp"

#include <boost/math/special_functions/bessel.hpp>

#include <cmath>
#include <stdexcept>
#include <string>

namespace spider {

double bessel_k(double nu, double x) {
    if (!(x > 0.0)) throw std::invalid_argument("bessel_k: x must be positive");
    if (!std::isfinite(nu) || !std::isfinite(x)) throw std::invalid_argument("bessel_k: non-finite argument");
    try {
        return boost::math::cyl_bessel_k(std::fabs(nu), x);
    } catch (const std::overflow_error&) {
        throw std::overflow_error("bessel_k: overflow at nu=" + std::to_string(nu) +
                                  ", x=" + std::to_string(x));
    }
}

}  // namespace spider
