#ifndef SPIDER_COMBINATORICS_HPP
#define SPIDER_COMBINATORICS_HPP

#include "spider/nu_polynomial.hpp"
#include "spider/rational.hpp"

namespace spider {

/// Hard cap on row indices of the memoized triangles. Desk-scale guardrail;
/// requests beyond it throw std::invalid_argument.
inline constexpr unsigned long kCombinatoricsIndexLimit = 10000;

/// Unsigned Stirling number of the first kind (permutations of n with k
/// cycles). Zero when k > n or (k == 0 && n > 0). Memoized; safe to call
/// concurrently.
BigInt stirling1(unsigned long n, unsigned long k);

/// Stirling number of the second kind (partitions of n into k blocks).
/// Zero when k > n or (k == 0 && n > 0). Memoized; safe to call concurrently.
BigInt stirling2(unsigned long n, unsigned long k);

/// Binomial coefficient, zero when k > n. Memoized Pascal triangle.
BigInt binomial(unsigned long n, unsigned long k);

/// Signed Bessel number of the first kind
///   b(n,k) = (-1)^(n-k) (2n-k-1)! / (2^(n-k) (k-1)! (n-k)!),
/// defined for 1 <= k <= n; anything else is rejected.
BigInt bessel_number(unsigned long n, unsigned long k);

/// The degree-k polynomial binom(nu+k-1, k) = (1/k!) * sum_j s1(k,j) nu^j,
/// k >= 1.
NuPolynomial rising_binomial_poly(unsigned long k);

}  // namespace spider

#endif
