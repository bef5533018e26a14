// Command-line surface for the faulty-search library: evaluate strategies,
// run the sub-monotone solver, certify the monotone lower bound, Monte Carlo
// cross-checks, and CSV figure data.

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "halfline/figures.hpp"
#include "halfline/monotone.hpp"
#include "halfline/montecarlo.hpp"
#include "halfline/submonotone.hpp"
#include "halfline/trajectory.hpp"

namespace {

using nlohmann::json;

constexpr int kExitUsage = 2;   // parse / validation errors
constexpr int kExitDomain = 3;  // divergence / domain errors
constexpr int kExitPartial = 4; // figures with failed cells

std::string fmt9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

struct StrategyFlags {
    std::optional<double> geometric;
    bool optimal_monotone = false;
    std::string submonotone;  // "t=<t>,beta=<b>,gammas=<g1:...:gt>"
    std::string optimize;     // "t=<t>"
};

void add_strategy_flags(CLI::App* cmd, StrategyFlags& f) {
    auto* a = cmd->add_option("--geometric", f.geometric, "geometric monotone strategy with base b");
    auto* b = cmd->add_flag("--optimal-monotone", f.optimal_monotone,
                            "geometric monotone strategy with the optimal base for p");
    auto* c = cmd->add_option("--submonotone", f.submonotone,
                              "sub-monotone strategy, t=<t>,beta=<b>,gammas=<g1:...:gt>");
    auto* d = cmd->add_option("--optimize", f.optimize,
                              "solve for the best sub-monotone strategy first, t=<t>");
    a->excludes(b, c, d);
    b->excludes(c, d);
    c->excludes(d);
}

double parse_field(const std::string& spec, const std::string& key) {
    const auto pos = spec.find(key + "=");
    if (pos == std::string::npos)
        throw CLI::ValidationError("--submonotone", "missing field '" + key + "'");
    return std::stod(spec.substr(pos + key.size() + 1));
}

halfline::Strategy make_strategy(const StrategyFlags& f, double p, double tol) {
    using halfline::Strategy;
    if (f.geometric) return Strategy::geometric(*f.geometric);
    if (f.optimal_monotone) return Strategy::geometric(halfline::optimal_base(p));
    if (!f.optimize.empty()) {
        const int t = static_cast<int>(parse_field(f.optimize, "t"));
        return Strategy::sub_monotone(halfline::solve_optimal(p, t, tol).params);
    }
    if (!f.submonotone.empty()) {
        const int t = static_cast<int>(parse_field(f.submonotone, "t"));
        const double beta = parse_field(f.submonotone, "beta");
        std::vector<double> gammas;
        if (t > 0) {
            const auto pos = f.submonotone.find("gammas=");
            if (pos == std::string::npos)
                throw CLI::ValidationError("--submonotone", "missing field 'gammas'");
            std::istringstream in(f.submonotone.substr(pos + 7));
            std::string tok;
            while (std::getline(in, tok, ':')) {
                const auto comma = tok.find(',');
                gammas.push_back(std::stod(tok.substr(0, comma)));
                if (comma != std::string::npos) break;
            }
        }
        return Strategy::sub_monotone(halfline::SubMonotoneParams(t, beta, std::move(gammas), p));
    }
    throw CLI::ValidationError("strategy", "one of --geometric / --optimal-monotone / "
                                           "--submonotone / --optimize is required");
}

void emit(bool as_json, const json& obj, const std::vector<std::string>& lines) {
    if (as_json) {
        std::cout << obj.dump() << "\n";
        return;
    }
    for (const auto& l : lines) std::cout << l << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"p-faulty search on the half-line: strategy evaluation and synthesis"};
    app.require_subcommand(1);

    bool as_json = false, quiet = false;
    double tol = 1e-13;
    app.add_flag("--json", as_json, "machine-readable output");
    app.add_flag("--quiet", quiet, "suppress informational output");
    app.add_option("--tol", tol, "root-refinement tolerance")->capture_default_str();

    // eval
    auto* eval = app.add_subcommand("eval", "evaluate a strategy's expected time and ratio");
    StrategyFlags eval_strat;
    add_strategy_flags(eval, eval_strat);
    double eval_p = 0, eval_d = 0, eval_eps = 1e-10, eval_delta = 1e-9;
    int eval_rmax = 80;
    bool eval_sup = false, eval_mc = false;
    long long eval_trials = 100000;
    std::uint64_t eval_seed = 1;
    eval->add_option("--p", eval_p, "detection probability")->required();
    auto* dopt = eval->add_option("--d", eval_d, "treasure placement (>= 1)");
    auto* sopt = eval->add_flag("--sup", eval_sup, "worst case over placements");
    sopt->excludes(dopt);
    eval->add_option("--eps", eval_eps, "series truncation bound")->capture_default_str();
    eval->add_option("--rmax", eval_rmax, "rounds for --sup")->capture_default_str();
    eval->add_option("--delta", eval_delta, "one-sided offset for --sup")->capture_default_str();
    eval->add_flag("--mc", eval_mc, "Monte Carlo cross-check (with --d)");
    eval->add_option("--trials", eval_trials, "Monte Carlo trials")->capture_default_str();
    eval->add_option("--seed", eval_seed, "Monte Carlo seed")->capture_default_str();

    // optimize
    auto* opt = app.add_subcommand("optimize", "best sub-monotone strategy for (p, t)");
    double opt_p = 0;
    int opt_t = 0;
    bool opt_heuristic = false;
    opt->add_option("--p", opt_p, "detection probability")->required();
    opt->add_option("--t", opt_t, "number of inner turning points")->required();
    opt->add_flag("--heuristic", opt_heuristic, "closed-form beta = 1/(1-p) variant (t = 1 or 2)");

    // lower-bound
    auto* lb = app.add_subcommand("lower-bound", "certify the monotone lower bound numerically");
    double lb_p = 0, lb_tol = 1e-6;
    int lb_ell = 40;
    lb->add_option("--p", lb_p, "detection probability")->required();
    lb->add_option("--ell", lb_ell, "certificate system size")->required();
    lb->add_option("--threshold-tol", lb_tol, "bisection width on c")->capture_default_str();

    // simulate
    auto* sim = app.add_subcommand("simulate", "Monte Carlo detection-time estimate");
    StrategyFlags sim_strat;
    add_strategy_flags(sim, sim_strat);
    double sim_p = 0, sim_d = 0;
    long long sim_trials = 100000;
    std::uint64_t sim_seed = 1;
    int sim_maxcross = 0;
    sim->add_option("--p", sim_p, "detection probability")->required();
    sim->add_option("--d", sim_d, "treasure placement (>= 1)")->required();
    sim->add_option("--trials", sim_trials, "number of trials")->capture_default_str();
    sim->add_option("--seed", sim_seed, "RNG seed (SplitMix64)")->capture_default_str();
    sim->add_option("--max-crossings", sim_maxcross, "censoring limit (0 = auto)")
        ->capture_default_str();

    // figures
    auto* figs = app.add_subcommand("figures", "write CSV figure data");
    halfline::FigureSpec fig_spec;
    std::string fig_out;
    figs->add_option("--out", fig_out, "output directory")->required();
    figs->add_option("--figure", fig_spec.figure, "all, fig2..fig10, or a panel id")
        ->capture_default_str();
    figs->add_option("--p-lo", fig_spec.p_lo, "grid start")->capture_default_str();
    figs->add_option("--p-hi", fig_spec.p_hi, "grid end")->capture_default_str();
    figs->add_option("--p-step", fig_spec.p_step, "grid step")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (*eval) {
            const auto strategy = make_strategy(eval_strat, eval_p, tol);
            if (eval_sup) {
                const auto rep = halfline::competitive_ratio_sup(strategy, eval_p, eval_rmax, eval_delta);
                emit(as_json,
                     {{"sup", rep.ratio}, {"round", rep.round}, {"interval", rep.interval}},
                     {"sup=" + fmt9(rep.ratio) + " round=" + std::to_string(rep.round) +
                      " interval=" + std::to_string(rep.interval)});
            } else {
                if (!*dopt) throw CLI::ValidationError("eval", "--d or --sup is required");
                const double et = halfline::expected_detection_time(strategy, eval_p, eval_d, eval_eps);
                const double ratio = eval_p * et / eval_d;
                json obj = {{"d", eval_d}, {"expected_time", et}, {"ratio", ratio}};
                std::vector<std::string> lines{"expected_time=" + fmt9(et) + " ratio=" + fmt9(ratio)};
                if (eval_mc) {
                    const auto mc = halfline::simulate_detection_time(
                        strategy, eval_p, eval_d, {eval_trials, eval_seed, 0});
                    obj["mc_mean"] = mc.mean;
                    obj["mc_std_error"] = mc.std_error;
                    lines.push_back("mc_mean=" + fmt9(mc.mean) +
                                    " mc_std_error=" + fmt9(mc.std_error));
                }
                emit(as_json, obj, lines);
            }
        } else if (*opt) {
            halfline::SubMonotoneSolution sol = [&] {
                if (!opt_heuristic) return halfline::solve_optimal(opt_p, opt_t, tol);
                if (opt_t == 1) return halfline::heuristic_t1(opt_p);
                if (opt_t == 2) return halfline::heuristic_t2(opt_p);
                throw CLI::ValidationError("--heuristic", "closed forms exist for t = 1 and t = 2");
            }();
            json obj = {{"R", sol.ratio},
                        {"beta", sol.params.beta},
                        {"gammas", sol.params.gammas},
                        {"margin_growth", sol.report.margin_growth},
                        {"margin_cap", sol.report.margin_cap},
                        {"residual", sol.report.residual13},
                        {"per_interval", sol.report.per_interval}};
            std::ostringstream line;
            line << "R=" << fmt9(sol.ratio) << " beta=" << fmt9(sol.params.beta);
            for (size_t i = 0; i < sol.params.gammas.size(); ++i)
                line << " gamma" << i + 1 << "=" << fmt9(sol.params.gammas[i]);
            line << " margin_growth=" << fmt9(sol.report.margin_growth)
                 << " margin_cap=" << fmt9(sol.report.margin_cap)
                 << " residual=" << fmt9(sol.report.residual13);
            emit(as_json, obj, {line.str()});
        } else if (*lb) {
            const double threshold = halfline::lower_bound_threshold(lb_p, lb_ell, lb_tol);
            const double target = halfline::optimal_monotone_cr(lb_p);
            emit(as_json,
                 {{"threshold", threshold}, {"closed_form", target}, {"gap", std::abs(threshold - target)}},
                 {"threshold=" + fmt9(threshold) + " closed_form=" + fmt9(target) +
                  " gap=" + fmt9(std::abs(threshold - target))});
        } else if (*sim) {
            const auto strategy = make_strategy(sim_strat, sim_p, tol);
            const auto res = halfline::simulate_detection_time(
                strategy, sim_p, sim_d, {sim_trials, sim_seed, sim_maxcross});
            emit(as_json,
                 {{"mean", res.mean},
                  {"std_error", res.std_error},
                  {"trials", res.trials},
                  {"censored", res.censored}},
                 {"mean=" + fmt9(res.mean) + " std_error=" + fmt9(res.std_error) +
                  " trials=" + std::to_string(res.trials) + " censored=" + std::to_string(res.censored)});
        } else if (*figs) {
            fig_spec.out_dir = fig_out;
            const auto result = halfline::write_figures(fig_spec);
            json files = json::array();
            std::vector<std::string> lines;
            for (const auto& f : result.files) {
                files.push_back(f.string());
                if (!quiet) lines.push_back("wrote " + f.string());
            }
            if (result.solver_failures > 0)
                lines.push_back("warning: " + std::to_string(result.solver_failures) +
                                " grid cell(s) left empty");
            emit(as_json, {{"files", files}, {"failed_cells", result.solver_failures}}, lines);
            if (result.solver_failures > 0) return kExitPartial;
        }
    } catch (const CLI::Error& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {  // divergence and solver domain errors
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
