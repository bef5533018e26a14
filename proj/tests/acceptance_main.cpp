// Acceptance suite: one pass/fail line per criterion, nonzero exit on failure.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "halfline/detail/submonotone_core.hpp"
#include "halfline/monotone.hpp"
#include "halfline/montecarlo.hpp"
#include "halfline/submonotone.hpp"
#include "halfline/trajectory.hpp"

using namespace halfline;

namespace {

int failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %2d: %s (%s)\n", pass ? "PASS" : "FAIL", id, name.c_str(),
                detail.c_str());
    if (!pass) ++failures;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

std::vector<double> default_grid() {
    std::vector<double> g;
    for (int k = 0; k < 197; ++k) g.push_back((10.0 + 5.0 * k) / 1000.0);
    return g;
}

}  // namespace

int main() {
    const std::vector<double> grid = default_grid();

    // 1. optimal monotone closed form across 99 p values, 1e-10
    {
        double worst = 0.0;
        for (int i = 1; i <= 99; ++i) {
            const double p = i / 100.0;
            const double direct = monotone_cr_formula(p, optimal_base(p));
            const double closed = (4.0 + 4.0 * std::sqrt(1.0 - p)) / (2.0 - p) - p;
            worst = std::max(worst, std::abs(direct - closed));
        }
        report(1, "optimal monotone closed form on 99 p values", worst <= 1e-10,
               "max err " + fmt(worst));
    }

    // 2. series / event-walk / Monte Carlo triangle at (p=0.5, b=2, d=3)
    {
        const auto strat = Strategy::geometric(2.0);
        const double series = expected_detection_time(strat, 0.5, 3.0, 1e-12);
        const bool series_ok = std::abs(series - 13.0) <= 1e-10;

        const auto sched = gap_schedule(strat, 3.0, 6);
        const std::vector<double> want{7, 2, 6, 10, 6, 26};
        bool gaps_ok = true;
        for (size_t i = 0; i < want.size(); ++i)
            gaps_ok = gaps_ok && std::abs(sched.gaps[i] - want[i]) <= 1e-9;

        const auto mc = simulate_detection_time(strat, 0.5, 3.0, {1000000, 20240811, 0});
        const bool mc_ok = std::abs(mc.mean - 13.0) <= 4.0 * mc.std_error;

        report(2, "series=13.0, gaps (7,2,6,10,6,26), MC within 4 sigma",
               series_ok && gaps_ok && mc_ok,
               "series err " + fmt(std::abs(series - 13.0)) + ", MC dev " +
                   fmt(std::abs(mc.mean - 13.0)) + " vs 4se " + fmt(4.0 * mc.std_error));
    }

    // 3. lower-bound certification at ell = 40 and 80
    {
        bool ok = true;
        double worst40 = 0.0;
        std::string bad;
        for (int i = 1; i <= 9; ++i) {
            const double p = i / 10.0;
            const double target = optimal_monotone_cr(p);
            const double g40 = std::abs(lower_bound_threshold(p, 40, 1e-10) - target);
            const double g80 = std::abs(lower_bound_threshold(p, 80, 1e-10) - target);
            worst40 = std::max(worst40, g40);
            if (!(g40 <= 0.01) || !(g80 < g40)) {
                ok = false;
                bad = "p=" + fmt(p) + " g40=" + fmt(g40) + " g80=" + fmt(g80);
            }
        }
        report(3, "lower-bound threshold: ell=40 within 0.01, ell=80 closer", ok,
               ok ? "max ell=40 gap " + fmt(worst40) : bad);
    }

    // shared sweep over grid x t=0..10
    std::map<std::pair<int, int>, SubMonotoneSolution> sweep;
    bool sweep_ok = true;
    std::string sweep_err;
    for (size_t k = 0; k < grid.size() && sweep_ok; ++k) {
        for (int t = 0; t <= 10; ++t) {
            try {
                sweep.emplace(std::make_pair(static_cast<int>(k), t),
                              solve_optimal(grid[k], t));
            } catch (const std::exception& e) {
                sweep_ok = false;
                sweep_err = "p=" + fmt(grid[k]) + " t=" + std::to_string(t) + ": " + e.what();
                break;
            }
        }
    }

    // 4. t=0 solver output matches the monotone closed forms within 1e-8
    {
        double worst = 0.0;
        if (sweep_ok) {
            for (size_t k = 0; k < grid.size(); ++k) {
                const auto& sol = sweep.at({static_cast<int>(k), 0});
                worst = std::max(worst, std::abs(sol.ratio - optimal_monotone_cr(grid[k])));
                worst = std::max(worst, std::abs(sol.params.beta - optimal_base(grid[k])));
            }
        }
        report(4, "0-sub-monotone equals the optimal monotone strategy", sweep_ok && worst <= 1e-8,
               sweep_ok ? "max err " + fmt(worst) : sweep_err);
    }

    // 5. heuristic t=1: closed form at p=0.5, equalization, gamma_1 scaling
    {
        const double r05 = heuristic_t1(0.5).ratio;
        bool ok = std::abs(r05 - 3.702031) <= 1e-5;
        double worst_eq = 0.0, worst_g = 0.0;
        for (double p : grid) {
            const auto sol = heuristic_t1(p);
            worst_eq = std::max(worst_eq,
                                std::abs(sol.report.per_interval[0] - sol.report.per_interval[1]));
            const double gs = sol.params.gammas[0] * (1.0 - p);
            worst_g = std::max(worst_g, gs);
            if (!(gs > 0.0 && gs <= 1.0)) ok = false;
        }
        ok = ok && worst_eq <= 1e-6;
        report(5, "heuristic t=1: closed form, equalization, gamma_1(1-p) in (0,1]", ok,
               "R(0.5) err " + fmt(std::abs(r05 - 3.702031)) + ", max |R1-R2| " + fmt(worst_eq) +
                   ", max gamma_1(1-p) " + fmt(worst_g));
    }

    // 6. strict improvement chain in t, and t=1 beats every monotone strategy
    {
        bool ok = sweep_ok;
        double min_gain = 1e300, min_vs_mono = 1e300;
        for (size_t k = 0; k < grid.size() && ok; ++k) {
            for (int t = 1; t <= 10; ++t) {
                const double gain = ratio_improvement(grid[k], t);
                min_gain = std::min(min_gain, gain);
                if (!(gain > 0.0)) ok = false;
            }
            const double vs = optimal_monotone_cr(grid[k]) - sweep.at({static_cast<int>(k), 1}).ratio;
            min_vs_mono = std::min(min_vs_mono, vs);
            if (!(vs > 0.0)) ok = false;
        }
        report(6, "ratios strictly decrease for t=0..10; t=1 beats monotone", ok,
               "min improvement " + fmt(min_gain) + ", min margin vs monotone " + fmt(min_vs_mono));
    }

    // 7. limit agreement: R_10 - R_bar in (0, 1e-6); x(p, R_bar) > 4
    {
        bool ok = true;
        double worst_gap = 0.0, min_gap = 1e300, min_x = 1e300;
        for (double p : grid) {
            const double gap = ratio_gap_to_limit(p, 10);
            const double x = limit_ratio(p).x;
            worst_gap = std::max(worst_gap, gap);
            min_gap = std::min(min_gap, gap);
            min_x = std::min(min_x, x);
            if (!(gap > 0.0 && gap < 1e-6 && x > 4.0)) ok = false;
        }
        report(7, "R_10 - R_bar in (0, 1e-6) and x(p, R_bar) > 4", ok,
               "gap range [" + fmt(min_gap) + ", " + fmt(worst_gap) + "], min x " + fmt(min_x));
    }

    // 8. feasibility margins and equalization residual at solver output
    {
        bool ok = sweep_ok;
        double min_margin = 1e300, worst_res = 0.0;
        if (sweep_ok) {
            for (const auto& [key, sol] : sweep) {
                min_margin = std::min({min_margin, sol.report.margin_growth, sol.report.margin_cap});
                worst_res = std::max(worst_res, std::abs(sol.report.residual13));
                if (!(sol.report.margin_growth > 0.0 && sol.report.margin_cap > 0.0 &&
                      std::abs(sol.report.residual13) <= 1e-8))
                    ok = false;
            }
        }
        report(8, "margins positive and residual <= 1e-8 on grid x t=0..10", ok,
               sweep_ok ? "min margin " + fmt(min_margin) + ", max residual " + fmt(worst_res)
                        : sweep_err);
    }

    // 9. global floors: overall ratio >= max(3, 4-p) - 1e-6 for every construction
    {
        bool ok = sweep_ok;
        double min_slack = 1e300;
        for (double p : grid) {
            const double floor = std::max(3.0, 4.0 - p) - 1e-6;
            const double h1 = heuristic_t1(p).report.overall;
            const double h2 = heuristic_t2(p).report.overall;
            min_slack = std::min({min_slack, h1 - floor, h2 - floor});
            if (!(h1 >= floor && h2 >= floor)) ok = false;
        }
        if (sweep_ok) {
            for (const auto& [key, sol] : sweep) {
                const double floor = std::max(3.0, 4.0 - grid[static_cast<size_t>(key.first)]) - 1e-6;
                min_slack = std::min(min_slack, sol.report.overall - floor);
                if (!(sol.report.overall >= floor)) ok = false;
            }
        }
        report(9, "every constructed strategy stays above max(3, 4-p)", ok,
               "min slack " + fmt(min_slack));
    }

    // 10. cross-oracle: trajectory sup agrees with the analytic report
    {
        bool ok = true;
        double worst = 0.0;
        for (int i = 1; i <= 9 && ok; ++i) {
            const double p = i / 10.0;
            for (int t = 0; t <= 3; ++t) {
                const auto sol = solve_optimal(p, t);
                const auto sup =
                    competitive_ratio_sup(Strategy::sub_monotone(sol.params), p, 400, 1e-9);
                const double err = std::abs(sup.ratio - sol.report.overall);
                worst = std::max(worst, err);
                if (!(err <= 1e-5)) ok = false;
            }
        }
        report(10, "event-walk sup matches analytic ratios on the 9x4 spot grid", ok,
               "max deviation " + fmt(worst));
    }

    // 11. transcription guard: cleared equalization-constraint numerator vs the q-poly
    {
        SplitMix64 rng{987654321};
        bool ok = true;
        double worst = 0.0;
        int done = 0;
        while (done < 100) {
            const double p = 0.1 + 0.8 * rng.uniform();
            const double r = 3.05 + 4.0 * rng.uniform();
            const int t = static_cast<int>(4.0 * rng.uniform());
            const double cap = 1.0 / ((1.0 - p) * (1.0 - p));
            const auto cp = char_poly(p, r, t);
            const double x = cp.x;

            double ks[3];
            bool usable = true;
            for (int j = 0; j < 3; ++j) {
                const double beta =
                    1.0 + (0.1 + 0.25 * (j + rng.uniform())) * (std::min(cap, 8.0) - 1.0);
                const double qpoly = cp.q0 + cp.q1 * beta + cp.q2 * beta * beta;
                if (std::abs(qpoly) < 1e-6 * (std::abs(cp.q0) + std::abs(cp.q2))) {
                    usable = false;
                    break;
                }
                const double omp2 = (1.0 - p) * (1.0 - p);
                const double q_of_beta =
                    (r / p - p * (5.0 - 2.0 * p) / (2.0 - p)) * (beta - 1.0) * (1.0 - beta * omp2) -
                    2.0 * p * (beta * (1.0 - p) + 1.0);
                const double den = 2.0 * (1.0 - p) * (x - 1.0) * q_of_beta;
                ks[j] = detail::residual13<double>(p, beta, r, t) * den / qpoly;
            }
            if (!usable) continue;
            ++done;
            const double scale = std::max({std::abs(ks[0]), std::abs(ks[1]), std::abs(ks[2])});
            const double dev = std::max(std::abs(ks[0] - ks[1]), std::abs(ks[0] - ks[2]));
            worst = std::max(worst, dev / scale);
            if (!(dev <= 1e-6 * scale)) ok = false;
        }
        report(11, "equalization numerator proportional to q-poly at 100 points", ok,
               "max relative spread " + fmt(worst));
    }

    std::printf("%s: %d criterion(s) failed\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
    return failures == 0 ? 0 : 1;
}
