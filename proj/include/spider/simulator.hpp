#ifndef SPIDER_SIMULATOR_HPP
#define SPIDER_SIMULATOR_HPP

#include "spider/bessel_law.hpp"
#include "spider/mgf.hpp"
#include "spider/spider_config.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace spider {

/// Discretization and replication parameters for path simulation.
/// The radial transition is exact; the only bias source is the
/// leg-reassignment rule at downcrossings of the threshold eps, which must
/// stay tied to the grid via eps = c sqrt(step), c in [0.1, 5].
struct SimConfig {
    double step;           // grid spacing, <= 1e-2
    double eps;            // reassignment threshold
    double horizon = 1.0;  // fixed-time horizon for moment runs
    long replicates = 10000;
    std::uint64_t master_seed = 1;
    int threads = 0;  // 0 = hardware concurrency; capped by SPIDER_MOMENTS_THREADS

    SimConfig(double step_, double eps_, double horizon_, long replicates_, std::uint64_t seed);
};

/// Per-leg occupation of one simulated path. Each full grid step attributes
/// `step` to exactly one leg (counts), plus at most one partial step at the
/// end, so the occupation times sum to the horizon.
struct OccupationSample {
    std::vector<double> occupation;        // seconds per leg
    std::vector<std::int64_t> step_counts; // full steps per leg
    double horizon;
};

struct MomentEstimate {
    double mean;
    double std_error;  // sample std / sqrt(replicates)
    long replicates;
};

/// Exact squared-Bessel(delta) transition over time dt from state x:
/// N ~ Poisson(x/(2 dt)), then Gamma(delta/2 + N, scale 2 dt).
/// Mean x + delta dt, variance 4 dt x + 2 delta dt^2.
double besq_step(double delta, double x, double dt, std::mt19937_64& rng);

/// Deterministic per-replicate generator: identical (master_seed, replicate)
/// gives an identical stream regardless of threading.
std::mt19937_64 make_replicate_rng(std::uint64_t master_seed, long replicate);

/// One spider path: radius via exact squared-Bessel steps from 0, current leg
/// drawn from beta initially and re-drawn i.i.d. at every downcrossing of
/// eps; occupation accrues step-by-step to the current leg.
OccupationSample simulate_path(const BesselLaw& law, const SpiderConfig& config, const SimConfig& sim,
                               long replicate);

/// Monte Carlo mean and standard error of prod_i (A_horizon^(i))^(n_i) over
/// the replicates. Requires horizon == 1 (self-similar comparisons).
MomentEstimate estimate_joint_moment(const BesselLaw& law, const SpiderConfig& config,
                                     const MultiIndex& idx, const SimConfig& sim);

/// Batch version sharing one path ensemble across several indices.
std::vector<MomentEstimate> estimate_joint_moments(const BesselLaw& law, const SpiderConfig& config,
                                                   const std::vector<MultiIndex>& indices,
                                                   const SimConfig& sim);

/// Monte Carlo estimate of E[exp(-sum z_j A_T^(j))] with T ~ Exp(rate
/// query.lambda) drawn per replicate; sim.horizon is ignored.
MomentEstimate estimate_mgf(const BesselLaw& law, const SpiderConfig& config, const MgfQuery& query,
                            const SimConfig& sim);

/// Thread count actually used: sim.threads (or hardware), capped by the
/// SPIDER_MOMENTS_THREADS environment variable when set.
int resolve_thread_count(const SimConfig& sim);

}  // namespace spider

#endif
