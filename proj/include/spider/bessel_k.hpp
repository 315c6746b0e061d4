#ifndef SPIDER_BESSEL_K_HPP
#define SPIDER_BESSEL_K_HPP

namespace spider {

/// Modified Bessel function of the second kind K_nu(x) for real order and
/// x > 0, using the symmetry K_nu = K_{-nu}. Rejects x <= 0
/// (std::invalid_argument); overflow at extreme arguments surfaces as
/// std::overflow_error.
double bessel_k(double nu, double x);

}  // namespace spider

#endif
