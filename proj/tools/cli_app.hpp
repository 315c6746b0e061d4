#ifndef SPIDER_CLI_APP_HPP
#define SPIDER_CLI_APP_HPP

#include "spider/rational.hpp"
#include "spider/simulator.hpp"
#include "spider/spider_config.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace spider::cli {

/// Everything one batch run needs; filled from a config file and/or flags
/// (flags win).
struct RunSpec {
    std::string command;  // moments | validate | simulate | mgf

    std::optional<Rational> nu;
    std::vector<Rational> beta;
    std::vector<double> sector_boundaries;  // sector mode (uniform angle law)

    std::vector<std::vector<int>> indices;  // dense exponent rows
    double lambda = 1.0;
    std::vector<double> z;
    int series_order = 6;

    double step = 0.0;  // 0 = per-command default
    double eps = 0.0;
    long reps = 0;
    std::uint64_t seed = 1;
    int threads = 0;

    std::string out_path;
    std::string format = "json";  // json | csv
    bool paper_literal = false;
    bool debug_wrong_c_ratio = false;
    bool full_grids = false;  // validate: run the full acceptance-scale grids
};

/// One validation check with its achieved-vs-required tolerance.
struct CheckResult {
    std::string name;
    bool passed;
    double tolerance;  // 0 = exact equality required
    double achieved;
    std::string detail;
};

/// Minimal TOML subset reader ([section], key = value; strings, numbers,
/// booleans, flat/nested arrays, # comments). Keys come back flattened as
/// "section.key". Throws std::runtime_error with a line number on bad input.
RunSpec load_config_file(const std::string& path);

/// Angles accept plain numbers and pi-forms: "pi", "2pi", "pi/2", "3pi/4".
double parse_angle(const std::string& token);

int cmd_moments(const RunSpec& spec, std::ostream& out, std::ostream& err);
int cmd_validate(const RunSpec& spec, std::ostream& out, std::ostream& err);
int cmd_simulate(const RunSpec& spec, std::ostream& out, std::ostream& err);
int cmd_mgf(const RunSpec& spec, std::ostream& out, std::ostream& err);

/// Full argv entry point; returns the process exit code
/// (0 ok, 1 validation failure, 2 usage/config error).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Reusable validation checks (also the substance of the acceptance suite).
namespace checks {

/// The four Stirling summation identities for n <= max_n (all admissible k,
/// m) and the Bessel-number identity for n <= max_bessel_n.
CheckResult stirling_identities(int max_n, int max_bessel_n);

/// closed == recursive exactly on `num_configs` random rational (nu, beta)
/// draws, every multi-index with total order <= max_total over <= max_legs
/// legs; at nu = -1/2 both must equal the Bessel-number form.
CheckResult three_way_engine_equality(int num_configs, int max_total, int max_legs,
                                      std::uint64_t seed);

/// E[A^(1)...A^(r)] = (-nu)^(r-1) beta_1...beta_r for r <= max_r.
CheckResult first_moment_corollary(int max_r, std::uint64_t seed);

/// nu=-1/2, beta=1/2 single-leg moments equal binom(2n,n)/4^n for n <= max_n,
/// each cross-checked against quadrature of the arcsine density.
CheckResult arcsine_reproduction(int max_n, double quad_tol);

/// d_factor_numeric vs d_factor_closed on a (nu, lambda, k) grid;
/// tol_low for k <= 2, tol_high for k in {3,4}.
CheckResult d_factor_agreement(const std::vector<Rational>& nus, const std::vector<double>& lambdas,
                               int max_k, double tol_low, double tol_high);

/// mgf_general_quadrature vs mgf_bessel_closed on a z-grid.
CheckResult mgf_quadrature_agreement(const std::vector<Rational>& nus,
                                     const std::vector<double>& lambdas,
                                     const std::vector<double>& z_grid, double tol);

/// Series-extracted moments equal joint_moment_closed exactly for all
/// multi-indices with total order <= max_total. `wrong_ratio` injects the
/// -nu/2 exponent to demonstrate the failure mode.
CheckResult mgf_series_cross_check(int max_total, bool wrong_ratio, std::uint64_t seed);

/// laplace * lambda^(N+1)/N! is lambda-invariant and equals the closed
/// moment for N <= max_total at each lambda.
CheckResult laplace_engine_consistency(int max_total, const std::vector<Rational>& lambdas,
                                       std::uint64_t seed, bool paper_literal);

/// Gaver-Stehfest recovers m t^N from N! m / lambda^(N+1).
CheckResult stehfest_inversion(double rel_tol);

/// Monte Carlo agreement with the closed forms within 3 SE plus a relative
/// bias allowance.
std::vector<CheckResult> monte_carlo(double step, double eps, long reps, std::uint64_t seed,
                                     int threads, double bias_allowance);

}  // namespace checks

}  // namespace spider::cli

#endif
