#include "halfline/montecarlo.hpp"

#include <cmath>

#include "doctest.h"
#include "halfline/submonotone.hpp"

using namespace halfline;

TEST_CASE("simulate: near-certain detection returns the first-passage time") {
    const auto res = simulate_detection_time(Strategy::geometric(2.0), 0.999999, 3.0,
                                             {20000, 7, 0});
    CHECK(res.mean == doctest::Approx(7.0).epsilon(1e-3));
    CHECK(res.std_error < 0.01);
    CHECK(res.censored == 0);
}

TEST_CASE("simulate: agrees with the exact series value") {
    const auto res = simulate_detection_time(Strategy::geometric(2.0), 0.5, 3.0,
                                             {1000000, 42, 0});
    CHECK(std::abs(res.mean - 13.0) <= 4.0 * res.std_error);
    CHECK(res.trials == 1000000);
}

TEST_CASE("simulate: same seed gives bit-identical results") {
    const SimConfig cfg{200000, 123456789, 0};
    const auto a = simulate_detection_time(Strategy::geometric(2.0), 0.5, 3.0, cfg);
    const auto b = simulate_detection_time(Strategy::geometric(2.0), 0.5, 3.0, cfg);
    CHECK(a.mean == b.mean);
    CHECK(a.std_error == b.std_error);

    const auto c = simulate_detection_time(Strategy::geometric(2.0), 0.5, 3.0,
                                           {200000, 987654321, 0});
    CHECK(a.mean != c.mean);  // different stream
}

TEST_CASE("simulate: censoring is an error") {
    try {
        simulate_detection_time(Strategy::geometric(2.0), 0.05, 3.0, {2000, 3, 4});
        FAIL("expected CensoredError");
    } catch (const CensoredError& e) {
        CHECK(e.censored > 0);
    }
}

TEST_CASE("simulate: statistical acceptance over random scenarios") {
    SplitMix64 rng{2024};
    int within = 0, total = 0;
    while (total < 30) {
        const double p = 0.2 + 0.6 * rng.uniform();
        const double b = 1.3 + 0.8 * rng.uniform();
        if (b * (1.0 - p) * (1.0 - p) > 0.9) continue;
        const double d = 1.0 + 7.0 * rng.uniform();
        double exact;
        try {
            exact = expected_detection_time(Strategy::geometric(b), p, d, 1e-9);
        } catch (const std::invalid_argument&) {
            continue;
        }
        const auto res = simulate_detection_time(Strategy::geometric(b), p, d,
                                                 {100000, 1000 + static_cast<std::uint64_t>(total), 0});
        ++total;
        if (std::abs(res.mean - exact) <= 4.0 * res.std_error) ++within;
    }
    CHECK(within >= 28);
}

TEST_CASE("simulate covers sub-monotone strategies") {
    const auto sol = heuristic_t1(0.5);
    const double d = 2.7;
    const auto strat = Strategy::sub_monotone(sol.params);
    const double exact = expected_detection_time(strat, 0.5, d, 1e-9);
    const auto res = simulate_detection_time(strat, 0.5, d, {200000, 5, 0});
    CHECK(std::abs(res.mean - exact) <= 4.0 * res.std_error);
}

TEST_CASE("simulate agrees at a worst-case placement of a solved strategy") {
    const double p = 0.5;
    const auto sol = solve_optimal(p, 1);
    const auto strat = Strategy::sub_monotone(sol.params);
    const auto sup = competitive_ratio_sup(strat, p, 80, 1e-9);
    const double anchor = std::pow(sol.params.beta, sup.round) *
                          (sup.interval == 1 ? 1.0 : sol.params.gammas[sup.interval - 2]);
    const double d = anchor * (1.0 + 1e-6);
    const double exact = expected_detection_time(strat, p, d, 1e-9);
    const auto res = simulate_detection_time(strat, p, d, {300000, 99, 0});
    CHECK(std::abs(res.mean - exact) <= 4.0 * res.std_error);
}

TEST_CASE("detection count per trial is geometric with mean 1/p") {
    // crossings until success with Bernoulli(p) detections, using the same
    // generator discipline as the simulator
    const double p = 0.37;
    const long trials = 200000;
    double sum = 0.0, sumsq = 0.0;
    for (long t = 0; t < trials; ++t) {
        SplitMix64 seeder{99 + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(t)};
        SplitMix64 rng{seeder.next()};
        int n = 1;
        while (!(rng.uniform() < p)) ++n;
        sum += n;
        sumsq += static_cast<double>(n) * n;
    }
    const double mean = sum / trials;
    const double var = (sumsq - trials * mean * mean) / (trials - 1.0);
    const double se = std::sqrt(var / trials);
    CHECK(std::abs(mean - 1.0 / p) <= 3.0 * se);
}
