#ifndef SPIDER_LAPLACE_INVERSION_HPP
#define SPIDER_LAPLACE_INVERSION_HPP

#include <functional>

namespace spider {

/// Gaver-Stehfest inversion of a Laplace transform at time t > 0:
///   f(t) ~= (ln 2 / t) * sum_{k=1..terms} V_k F(k ln 2 / t).
/// `terms` must be even and in [10, 18]. The weights V_k are computed in
/// exact rational arithmetic; the summation runs in 80-bit long double
/// because it is severely ill-conditioned (|V_k| reaches ~8e10 at 18 terms).
/// Accuracy is the caller's to verify, as usual for this method.
double gaver_stehfest(const std::function<long double(long double)>& transform, double t,
                      int terms = 18);

}  // namespace spider

#endif
