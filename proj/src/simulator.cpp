#include "spider/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <stdexcept>
#include <thread>

namespace spider {

SimConfig::SimConfig(double step_, double eps_, double horizon_, long replicates_, std::uint64_t seed)
    : step(step_), eps(eps_), horizon(horizon_), replicates(replicates_), master_seed(seed) {
    if (!(step > 0) || step > 1e-2) throw std::invalid_argument("SimConfig: step must be in (0, 1e-2]");
    const double c = eps / std::sqrt(step);
    if (!(c >= 0.1 && c <= 5.0))
        throw std::invalid_argument("SimConfig: eps must satisfy eps = c*sqrt(step), c in [0.1, 5]");
    if (!(horizon > 0)) throw std::invalid_argument("SimConfig: horizon must be positive");
    if (replicates < 1) throw std::invalid_argument("SimConfig: need at least one replicate");
}

double besq_step(double delta, double x, double dt, std::mt19937_64& rng) {
    if (x < 0) throw std::invalid_argument("besq_step: x must be nonnegative");
    if (!(dt > 0)) throw std::invalid_argument("besq_step: dt must be positive");
    long long mixing = 0;
    if (x > 0) {
        std::poisson_distribution<long long> poisson(x / (2.0 * dt));
        mixing = poisson(rng);
    }
    std::gamma_distribution<double> gamma(delta / 2.0 + static_cast<double>(mixing), 2.0 * dt);
    return gamma(rng);
}

std::mt19937_64 make_replicate_rng(std::uint64_t master_seed, long replicate) {
    // splitmix64 of (seed, replicate); decorrelates nearby replicate ids.
    std::uint64_t z = master_seed + 0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(replicate) + 1);
    for (int i = 0; i < 2; ++i) {
        z += 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        z = z ^ (z >> 31);
    }
    return std::mt19937_64(z);
}

namespace {

int pick_leg(const std::vector<double>& cumulative, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const double u = unif(rng);
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    return static_cast<int>(std::min<std::ptrdiff_t>(it - cumulative.begin(),
                                                     static_cast<std::ptrdiff_t>(cumulative.size()) - 1));
}

std::vector<double> cumulative_weights(const SpiderConfig& config) {
    std::vector<double> cum(static_cast<size_t>(config.leg_count()));
    double acc = 0.0;
    for (int i = 0; i < config.leg_count(); ++i) {
        acc += config.beta(i).to_double();
        cum[static_cast<size_t>(i)] = acc;
    }
    cum.back() = 1.0;
    return cum;
}

OccupationSample run_path(const BesselLaw& law, const std::vector<double>& cumulative,
                          const SimConfig& sim, double duration, std::mt19937_64& rng) {
    const double delta = law.order().dimension();
    const long long full_steps = static_cast<long long>(std::floor(duration / sim.step + 1e-9));
    double remainder = duration - static_cast<double>(full_steps) * sim.step;
    if (remainder < 1e-12 * sim.step) remainder = 0.0;

    OccupationSample sample;
    sample.step_counts.assign(cumulative.size(), 0);
    sample.horizon = duration;

    int leg = pick_leg(cumulative, rng);
    double x = 0.0;        // squared radius
    double prev_r = 0.0;
    const double eps2 = sim.eps * sim.eps;
    for (long long j = 0; j < full_steps; ++j) {
        x = besq_step(delta, x, sim.step, rng);
        if (x <= eps2 && prev_r > sim.eps) leg = pick_leg(cumulative, rng);
        prev_r = (x <= eps2) ? 0.0 : sim.eps + 1.0;  // only the side of eps matters
        ++sample.step_counts[static_cast<size_t>(leg)];
    }

    sample.occupation.resize(cumulative.size());
    for (size_t i = 0; i < cumulative.size(); ++i)
        sample.occupation[i] = static_cast<double>(sample.step_counts[i]) * sim.step;
    if (remainder > 0) sample.occupation[static_cast<size_t>(leg)] += remainder;
    return sample;
}

// Deterministic pairwise reduction; the result does not depend on how the
// entries were produced (thread count, scheduling).
double pairwise_sum(const double* data, size_t n) {
    if (n <= 8) {
        double s = 0.0;
        for (size_t i = 0; i < n; ++i) s += data[i];
        return s;
    }
    const size_t half = n / 2;
    return pairwise_sum(data, half) + pairwise_sum(data + half, n - half);
}

MomentEstimate summarize(const std::vector<double>& values) {
    const size_t n = values.size();
    if (n < 2) throw std::invalid_argument("estimate: need at least 2 replicates for a standard error");
    const double mean = pairwise_sum(values.data(), n) / static_cast<double>(n);
    std::vector<double> sq(n);
    for (size_t i = 0; i < n; ++i) sq[i] = (values[i] - mean) * (values[i] - mean);
    const double var = pairwise_sum(sq.data(), n) / static_cast<double>(n - 1);
    return {mean, std::sqrt(var / static_cast<double>(n)), static_cast<long>(n)};
}

// Runs `body(replicate)` for every replicate index on the resolved number of
// threads. Work is chunked statically; all determinism lives in the
// per-replicate seeding, so the split is irrelevant to results.
void parallel_replicates(long replicates, int threads, const std::function<void(long)>& body) {
    if (threads <= 1) {
        for (long r = 0; r < replicates; ++r) body(r);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(threads));
    const long chunk = (replicates + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
        const long lo = static_cast<long>(t) * chunk;
        const long hi = std::min(replicates, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &body] {
            for (long r = lo; r < hi; ++r) body(r);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace

int resolve_thread_count(const SimConfig& sim) {
    int threads = sim.threads > 0 ? sim.threads : static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
    if (const char* cap = std::getenv("SPIDER_MOMENTS_THREADS")) {
        const int limit = std::atoi(cap);
        if (limit >= 1) threads = std::min(threads, limit);
    }
    return threads;
}

OccupationSample simulate_path(const BesselLaw& law, const SpiderConfig& config, const SimConfig& sim,
                               long replicate) {
    auto rng = make_replicate_rng(sim.master_seed, replicate);
    return run_path(law, cumulative_weights(config), sim, sim.horizon, rng);
}

std::vector<MomentEstimate> estimate_joint_moments(const BesselLaw& law, const SpiderConfig& config,
                                                   const std::vector<MultiIndex>& indices,
                                                   const SimConfig& sim) {
    if (sim.horizon != 1.0)
        throw std::invalid_argument("estimate_joint_moments: horizon must be 1 for moment comparisons");
    for (const auto& idx : indices) idx.validate_against(config);

    const auto cumulative = cumulative_weights(config);
    std::vector<std::vector<double>> values(indices.size(),
                                            std::vector<double>(static_cast<size_t>(sim.replicates)));
    parallel_replicates(sim.replicates, resolve_thread_count(sim), [&](long r) {
        auto rng = make_replicate_rng(sim.master_seed, r);
        const auto sample = run_path(law, cumulative, sim, sim.horizon, rng);
        for (size_t q = 0; q < indices.size(); ++q) {
            double prod = 1.0;
            for (const auto& [leg, exp] : indices[q].entries())
                for (int e = 0; e < exp; ++e) prod *= sample.occupation[static_cast<size_t>(leg)];
            values[q][static_cast<size_t>(r)] = prod;
        }
    });

    std::vector<MomentEstimate> out;
    out.reserve(indices.size());
    for (const auto& v : values) out.push_back(summarize(v));
    return out;
}

MomentEstimate estimate_joint_moment(const BesselLaw& law, const SpiderConfig& config,
                                     const MultiIndex& idx, const SimConfig& sim) {
    return estimate_joint_moments(law, config, {idx}, sim).front();
}

MomentEstimate estimate_mgf(const BesselLaw& law, const SpiderConfig& config, const MgfQuery& query,
                            const SimConfig& sim) {
    query.validate_against(config);
    const auto cumulative = cumulative_weights(config);
    std::vector<double> values(static_cast<size_t>(sim.replicates));
    parallel_replicates(sim.replicates, resolve_thread_count(sim), [&](long r) {
        auto rng = make_replicate_rng(sim.master_seed, r);
        std::exponential_distribution<double> horizon_dist(query.lambda);
        const double horizon = horizon_dist(rng);
        const auto sample = run_path(law, cumulative, sim, horizon, rng);
        double arg = 0.0;
        for (const auto& [leg, z] : query.legs_z) arg += z * sample.occupation[static_cast<size_t>(leg)];
        values[static_cast<size_t>(r)] = std::exp(-arg);
    });
    return summarize(values);
}

}  // namespace spider
