#pragma once

#include <cstdint>

#include "halfline/trajectory.hpp"

namespace halfline {

/// SplitMix64 (Steele, Lea, Flood 2014): 64-bit state, one xor-shift-multiply
/// step per draw. Chosen for reproducibility, not cryptographic quality.
struct SplitMix64 {
    std::uint64_t state;

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

struct SimConfig {
    long long trials = 100000;
    std::uint64_t seed = 1;
    /// Crossings allowed per trial before the run is declared censored.
    /// 0 selects the default 10 * tail_bound_terms(p, 1, 1e-12), which keeps
    /// the per-trial censoring probability far below 1e-12.
    int max_crossings = 0;
};

struct SimResult {
    double mean;
    double std_error;  // sample std / sqrt(trials)
    long long trials;
    long long censored;  // always 0 in accepted runs
};

/// Empirical estimate of the expected detection time: each pass over the
/// placement is an independent Bernoulli(p) detection trial. Per-trial
/// substreams are derived from (seed, trial index), so the result is
/// bit-identical for a given seed regardless of scheduling.
SimResult simulate_detection_time(const Strategy& s, double p, double d, const SimConfig& cfg);

}  // namespace halfline
