#include "halfline/monotone.hpp"

#include <cmath>

#include "doctest.h"
#include "halfline/numerics.hpp"
#include "halfline/trajectory.hpp"

using namespace halfline;

TEST_CASE("optimal_base examples and domain property") {
    CHECK(optimal_base(0.5) == doctest::Approx(1.7836116).epsilon(1e-7));
    CHECK(optimal_base(0.75) == doctest::Approx(1.0 / (0.5 * 0.75)).epsilon(1e-12));
    for (int i = 1; i <= 99; ++i) {
        const double p = i / 100.0;
        const double b = optimal_base(p);
        CHECK(b > 1.0);
        CHECK(b * (1.0 - p) * (1.0 - p) < 1.0);
    }
}

TEST_CASE("monotone_cr_formula at the optimal base") {
    const double p = 0.5, b = 1.7836116;
    const double v = monotone_cr_formula(p, b);
    CHECK(v == doctest::Approx(4.0522847).epsilon(1e-6));
    // term-by-term
    CHECK(p * 2 * b / (b - 1) == doctest::Approx(2.27616).epsilon(1e-5));
    CHECK(p * 2 * b * (1 - p) / (1 - b * 0.25) == doctest::Approx(1.60945).epsilon(1e-5));
    CHECK(p * p / (2 - p) == doctest::Approx(0.16667).epsilon(1e-4));

    // convexity: off-optimal bases do worse
    CHECK(monotone_cr_formula(p, 1.2) > v);
    CHECK(monotone_cr_formula(p, 2.8) > v);

    // first-order condition at b_p
    const double bp = optimal_base(p), h = 1e-6;
    const double deriv = (monotone_cr_formula(p, bp + h) - monotone_cr_formula(p, bp - h)) / (2 * h);
    CHECK(std::abs(deriv) < 1e-5);

    CHECK_THROWS_AS(monotone_cr_formula(0.5, 4.5), std::invalid_argument);
    CHECK_THROWS_AS(monotone_cr_formula(0.5, 0.9), std::invalid_argument);
}

TEST_CASE("optimal_monotone_cr examples and limits") {
    CHECK(optimal_monotone_cr(0.5) == doctest::Approx(4.0522847).epsilon(1e-7));
    CHECK(optimal_monotone_cr(1e-9) == doctest::Approx(4.0).epsilon(1e-4));
    CHECK(optimal_monotone_cr(1.0 - 1e-9) == doctest::Approx(3.0).epsilon(1e-4));
    // agreement with the b-formula across p
    for (int i = 1; i <= 99; ++i) {
        const double p = i / 100.0;
        CHECK(std::abs(optimal_monotone_cr(p) - monotone_cr_formula(p, optimal_base(p))) <= 1e-10);
    }
}

TEST_CASE("worst_case_cr_interval") {
    auto pow2 = [](int i) { return std::pow(2.0, i); };
    const double p = 0.5;

    // r=1 value matches the d -> x_r+ limit of the per-placement ratio
    const double v1 = worst_case_cr_interval(pow2, p, 1);
    const double limit = competitive_ratio_at(Strategy::geometric(2.0), p, 2.0 * (1 + 1e-10)).ratio;
    CHECK(v1 == doctest::Approx(limit).epsilon(1e-7));

    // geometric points approach the closed-form ratio as r grows
    auto geo = [b = optimal_base(p)](int i) { return std::pow(b, i); };
    CHECK(worst_case_cr_interval(geo, p, 50) ==
          doctest::Approx(monotone_cr_formula(p, optimal_base(p))).epsilon(1e-9));

    // sup over rounds is achieved at large r
    CHECK(worst_case_cr_interval(geo, p, 1) <= worst_case_cr_interval(geo, p, 50));

    auto fast = [](int i) { return std::pow(4.2, i); };
    CHECK_THROWS_AS(worst_case_cr_interval(fast, 0.5, 2), DivergenceError);
}

TEST_CASE("lower_bound_system entries") {
    const double p = 0.5, c = 4.0522847;
    const auto sys = lower_bound_system(p, c, 2);
    CHECK(sys.entry(1, 1) == doctest::Approx(0.5).epsilon(1e-12));          // beta_{1,0} = 1-p
    CHECK(sys.entry(2, 1) == doctest::Approx(-2.8856180).epsilon(1e-6));    // alpha
    CHECK(sys.rhs[0] == doctest::Approx(2.8856180).epsilon(1e-6));          // -alpha
    CHECK(sys.rhs[1] == doctest::Approx(-1.0));

    // folded last column: gamma_{l,k} + beta_{l,k} = (1-p)^{2(l-k)-1}/((2-p)p)
    const auto big = lower_bound_system(0.3, 4.0, 8);
    for (int k = 0; k <= 6; ++k) {
        const double want = std::pow(0.7, 2 * (8 - k) - 1) / ((2 - 0.3) * 0.3);
        CHECK(big.entry(k + 1, 8) == doctest::Approx(want).epsilon(1e-12));
    }

    // alpha < 0 exactly when c > p + 2p/(2-p)
    for (double pp : {0.2, 0.5, 0.8}) {
        const double edge = pp + 2 * pp / (2 - pp);
        CHECK(lower_bound_system(pp, edge + 0.01, 4).alpha < 0.0);
        CHECK(lower_bound_system(pp, edge - 0.01, 4).alpha > 0.0);
    }
}

TEST_CASE("lower_bound_verdict flips around the closed-form bound") {
    const double p = 0.5;
    const double cstar = optimal_monotone_cr(p);
    const auto above = lower_bound_verdict(p, cstar + 0.01, 40);
    CHECK(above.monotone);
    REQUIRE(above.f.size() == 41);
    CHECK(above.f[0] == 1.0);

    const auto below = lower_bound_verdict(p, cstar - 0.05, 40);
    CHECK_FALSE(below.monotone);

    // near the threshold the turning points grow roughly like b_p
    const double bp = optimal_base(p);
    for (int i = 20; i < 35; ++i) {
        const double ratio = above.f[static_cast<size_t>(i + 1)] / above.f[static_cast<size_t>(i)];
        CHECK(ratio == doctest::Approx(bp).epsilon(0.15));
    }
}

TEST_CASE("lower_bound_threshold approaches the closed form") {
    const double p = 0.5;
    const double t40 = lower_bound_threshold(p, 40, 1e-7);
    CHECK(std::abs(t40 - 4.052) < 5e-3);
    CHECK(std::abs(t40 - optimal_monotone_cr(p)) < 0.01);

    const double t90 = lower_bound_threshold(0.9, 40, 1e-7);
    CHECK(std::abs(t90 - ((4 + 4 * std::sqrt(0.1)) / 1.1 - 0.9)) < 5e-3);

    // convergence in ell
    const double t30 = lower_bound_threshold(p, 30, 1e-10);
    const double t60 = lower_bound_threshold(p, 60, 1e-10);
    CHECK(std::abs(t60 - optimal_monotone_cr(p)) < std::abs(t30 - optimal_monotone_cr(p)));
}

TEST_CASE("lower_bound input validation") {
    CHECK_THROWS_AS(lower_bound_system(0.5, 4.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(lower_bound_threshold(0.5, 1, 1e-6), std::invalid_argument);
}
