#include "halfline/montecarlo.hpp"

#include <cmath>

#include "halfline/numerics.hpp"

namespace halfline {

SimResult simulate_detection_time(const Strategy& s, double p, double d, const SimConfig& cfg) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("simulate: p must be in (0,1)");
    if (cfg.trials < 1) throw std::invalid_argument("simulate: trials must be >= 1");
    int max_crossings = cfg.max_crossings;
    if (max_crossings == 0) max_crossings = 10 * tail_bound_terms(p, 1.0, 1e-12);
    if (max_crossings < 1) throw std::invalid_argument("simulate: max_crossings must be >= 1");

    // The crossing times are deterministic per (strategy, d); only the
    // detection outcomes are random.
    const GapSchedule sched = gap_schedule(s, d, max_crossings);
    const std::vector<double>& f = sched.cumulative;

    double sum = 0.0, sumsq = 0.0;
    long long censored = 0;
    for (long long trial = 0; trial < cfg.trials; ++trial) {
        // hash (seed, trial) into the stream start; plain arithmetic offsets
        // would make consecutive trials shifted copies of one sequence
        SplitMix64 seeder{cfg.seed + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(trial)};
        SplitMix64 rng{seeder.next()};
        double time = -1.0;
        for (int i = 0; i < max_crossings; ++i) {
            if (rng.uniform() < p) {
                time = f[static_cast<size_t>(i)];
                break;
            }
        }
        if (time < 0.0) {
            ++censored;
            continue;
        }
        sum += time;
        sumsq += time * time;
    }
    if (censored > 0)
        throw CensoredError(censored, "simulate: " + std::to_string(censored) +
                                          " trial(s) exceeded max_crossings");

    const double n = static_cast<double>(cfg.trials);
    const double mean = sum / n;
    double var = 0.0;
    if (cfg.trials > 1) var = std::max(0.0, (sumsq - n * mean * mean) / (n - 1.0));
    return {mean, std::sqrt(var / n), cfg.trials, 0};
}

}  // namespace halfline
