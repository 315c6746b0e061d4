#ifndef SPIDER_MOMENTS_HPP
#define SPIDER_MOMENTS_HPP

#include "spider/d_factor.hpp"
#include "spider/rational.hpp"
#include "spider/spider_config.hpp"

#include <stdexcept>

namespace spider {

/// Raised in paper-literal mode when a computation would need the single-leg
/// transform recursion, whose final damping-factor sum is refused in that
/// mode. Rerun without the flag for the corrected reading.
class PaperLiteralRefusal : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// n-th moment of the occupation time of one leg up to time 1 for a Bessel
/// spider: E[(A_1^(i))^n] =
///   sum_{l=1..n} sum_{k=1..l} (-1)^(k-1) (k-1)!/(n-1)!
///                             s1(n,l) S2(l,k) nu^(l-1) beta_i^k.
Rational single_moment_closed(const Rational& nu, const Rational& beta_i, int n);

/// Joint moment E[prod_i (A_1^(i))^(n_i)] for a Bessel spider by the explicit
/// Stirling-number formula; delegates to single_moment_closed when the index
/// touches one leg.
Rational joint_moment_closed(const Rational& nu, const SpiderConfig& config, const MultiIndex& idx);

/// Brownian-spider (nu = -1/2) joint moment via Bessel numbers:
/// equals joint_moment_closed at nu = -1/2.
Rational brownian_joint_moment(const SpiderConfig& config, const MultiIndex& idx);

/// Joint moment by the self-similar recursion with damping factors from a
/// closed-form provider. Memoized on the sorted (exponent, weight) multiset,
/// which is sound because closed-form factors depend on the leg only through
/// its weight. The empty index gives 1.
Rational joint_moment_recursive(const DFactorProvider& provider, const SpiderConfig& config,
                                const MultiIndex& idx);

/// Laplace transform (in t, at fixed lambda) of the joint moment
/// E[prod (A_t^(i))^(n_i)], exact closed-form-provider version. The order-0
/// base is 1/lambda and the single-leg first-order base is beta_i/lambda^2.
Rational laplace_joint_moment_exact(const DFactorProvider& provider, const SpiderConfig& config,
                                    const MultiIndex& idx, const Rational& lambda,
                                    bool paper_literal = false);

/// Same recursion in floating point, accepting any provider mode.
double laplace_joint_moment(const DFactorProvider& provider, const SpiderConfig& config,
                            const MultiIndex& idx, double lambda, bool paper_literal = false);

}  // namespace spider

#endif
