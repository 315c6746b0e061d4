#ifndef SPIDER_MGF_HPP
#define SPIDER_MGF_HPP

#include "spider/bessel_law.hpp"
#include "spider/rational.hpp"
#include "spider/spider_config.hpp"
#include "spider/truncated_series.hpp"

#include <map>
#include <utility>
#include <vector>

namespace spider {

/// Evaluation point of the occupation-time moment generating function at an
/// independent exponential time with rate lambda: one nonnegative argument
/// z_j per selected leg.
struct MgfQuery {
    double lambda;
    std::vector<std::pair<int, double>> legs_z;  // (leg, z_j), distinct legs

    MgfQuery(double lambda_, std::vector<std::pair<int, double>> legs_z_);
    void validate_against(const SpiderConfig& config) const;
};

/// E[exp(-sum z_j A_T^(j))] for a Bessel spider in closed form:
///   (1 - sum beta_j + sum beta_j (lambda/(lambda+z_j)) rho_j) /
///   (1 - sum beta_j + sum beta_j rho_j),
/// with the normalized local-time ratio rho_j = ((lambda+z_j)/lambda)^(-nu).
double mgf_bessel_closed(const Rational& nu, const SpiderConfig& config, const MgfQuery& query);

/// The same expectation by quadrature of the resolvent-kernel representation
/// (valid for a general leg diffusion; here instantiated with the Bessel
/// ingredients): numerator 1 - sum_j lambda z_j/(lambda+z_j) *
/// int g_lambda(0,(y,j)) (1 - phi_hat_{lambda+z_j}(y)) beta_j m(dy),
/// denominator 1 + sum_j z_j int g_lambda(0,(y,j)) phi_hat_{lambda+z_j}(y)
/// beta_j m(dy).
double mgf_general_quadrature(const BesselLaw& law, const SpiderConfig& config, const MgfQuery& query);

struct SeriesMomentsOptions {
    /// Slope a of the local-time ratio exponent a*nu: the correct value is
    /// -1; anything else is for deliberately demonstrating the failure of a
    /// wrong normalization in the cross-check suites.
    Rational ratio_exponent_slope = Rational(-1);
};

/// Exact joint moments E[prod (A_1^(j))^(n_j)] for every multi-index over
/// `legs` with total order in [1, max_total_order], recovered from the
/// z-expansion of the closed MGF at lambda = 1: the coefficient of z^n is
/// (-1)^N (N!/prod n_j!) E[prod A_1^(n_j)]. Guardrail: max_total_order <= 10.
std::map<MultiIndex, Rational> mgf_series_moments(const Rational& nu, const SpiderConfig& config,
                                                  int max_total_order, const std::vector<int>& legs,
                                                  const SeriesMomentsOptions& options = {});

}  // namespace spider

#endif
