#include "halfline/figures.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <optional>

#include "halfline/submonotone.hpp"

namespace halfline {

namespace {

using Cell = std::optional<double>;
using RowFn = std::function<std::vector<Cell>(double)>;

struct FigureDef {
    std::string file;
    std::vector<std::string> columns;  // after the leading "p"
    RowFn row;
};

std::string fmt9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

std::vector<Cell> collect(int t_lo, int t_hi, const std::function<Cell(int)>& cell) {
    std::vector<Cell> out;
    for (int t = t_lo; t <= t_hi; ++t) out.push_back(cell(t));
    return out;
}

template <class F>
Cell guard(const F& f) {
    try {
        return f();
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

std::vector<std::string> t_names(int lo, int hi) {
    std::vector<std::string> out;
    for (int t = lo; t <= hi; ++t) out.push_back("t" + std::to_string(t));
    return out;
}

std::vector<FigureDef> figure_defs() {
    std::vector<FigureDef> defs;

    defs.push_back({"fig2.csv", t_names(0, 4), [](double p) {
        return collect(0, 4, [&](int t) { return guard([&] { return solve_optimal(p, t).ratio; }); });
    }});
    defs.push_back({"fig3.csv", t_names(1, 4), [](double p) {
        return collect(1, 4, [&](int t) {
            return guard([&] {
                const double b = solve_optimal(p, t).params.beta;
                return b * (1 - p) * (1 - p) - (1 - p);
            });
        });
    }});
    defs.push_back({"fig4.csv", t_names(1, 4), [](double p) {
        return collect(1, 4, [&](int t) {
            return guard([&] { return solve_optimal(p, t).report.margin_growth * p * (1 - p); });
        });
    }});
    defs.push_back({"fig5.csv", t_names(1, 4), [](double p) {
        return collect(1, 4, [&](int t) {
            return guard([&] { return solve_optimal(p, t).report.margin_cap * (1 - p) * (1 - p); });
        });
    }});
    defs.push_back({"fig6.csv", t_names(5, 10), [](double p) {
        return collect(5, 10, [&](int t) {
            return guard([&] { return solve_optimal(p, t).report.margin_growth; });
        });
    }});
    defs.push_back({"fig7.csv", t_names(5, 10), [](double p) {
        return collect(5, 10, [&](int t) {
            return guard([&] { return solve_optimal(p, t).report.margin_cap; });
        });
    }});
    defs.push_back({"fig8left.csv", t_names(5, 10), [](double p) {
        return collect(5, 10, [&](int t) {
            return guard([&] { return ratio_improvement(p, t) * std::pow(4.0, t - 5); });
        });
    }});
    defs.push_back({"fig8middle.csv", t_names(5, 10), [](double p) {
        return collect(5, 10, [&](int t) {
            return guard(
                [&] { return beta_relative_change(p, t) * std::pow(1 - p, 11 - t); });
        });
    }});
    defs.push_back({"fig8right.csv", t_names(5, 10), [](double p) {
        return collect(5, 10, [&](int t) {
            return guard([&] {
                return solve_optimal(p, t).report.margin_growth * p * (1 - p) * std::pow(4.0, t - 5);
            });
        });
    }});
    defs.push_back({"fig9left.csv", {"heuristic_minus_solver"}, [](double p) {
        return std::vector<Cell>{guard(
            [&] { return heuristic_t1(p).ratio - solve_optimal(p, 1).ratio; })};
    }});
    defs.push_back({"fig9middle.csv", {"gamma1_scaled"}, [](double p) {
        return std::vector<Cell>{guard(
            [&] { return heuristic_t1(p).params.gammas[0] * (1 - p); })};
    }});
    defs.push_back({"fig9right.csv", {"heuristic2_minus_solver1"}, [](double p) {
        return std::vector<Cell>{guard(
            [&] { return heuristic_t2(p).ratio - solve_optimal(p, 1).ratio; })};
    }});
    defs.push_back({"fig10left.csv", {"gap"}, [](double p) {
        return std::vector<Cell>{guard([&] { return ratio_gap_to_limit(p, 10); })};
    }});
    defs.push_back({"fig10middle.csv", {"x_at_limit"}, [](double p) {
        return std::vector<Cell>{guard([&] { return limit_ratio(p).x; })};
    }});
    defs.push_back({"fig10right.csv", {"margin_scaled"}, [](double p) {
        return std::vector<Cell>{guard(
            [&] { return limit_ratio(p).margin_cap * (1 - p) * (1 - p); })};
    }});
    return defs;
}

}  // namespace

FigureResult write_figures(const FigureSpec& spec) {
    if (!(spec.p_lo > 0.0 && spec.p_hi < 1.0 && spec.p_lo <= spec.p_hi))
        throw std::invalid_argument("write_figures: grid must lie strictly inside (0,1)");
    if (!(spec.p_step > 0.0)) throw std::invalid_argument("write_figures: step must be positive");

    std::vector<double> grid;
    for (int k = 0;; ++k) {
        const double p = spec.p_lo + spec.p_step * k;
        if (p > spec.p_hi + spec.p_step * 1e-9) break;
        grid.push_back(p);
    }

    std::vector<FigureDef> selected;
    for (auto& def : figure_defs()) {
        const std::string id = def.file.substr(0, def.file.size() - 4);  // drop ".csv"
        const std::string group = id.substr(0, id.find_first_of("lmr", 3));
        if (spec.figure == "all" || spec.figure == id || spec.figure == group)
            selected.push_back(std::move(def));
    }
    if (selected.empty())
        throw std::invalid_argument("write_figures: unknown figure id '" + spec.figure + "'");

    std::filesystem::create_directories(spec.out_dir);
    FigureResult result;
    for (const auto& def : selected) {
        const auto path = spec.out_dir / def.file;
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("write_figures: cannot open " + path.string());
        out << "p";
        for (const auto& c : def.columns) out << "," << c;
        out << "\n";
        for (double p : grid) {
            out << fmt9(p);
            for (const Cell& cell : def.row(p)) {
                out << ",";
                if (cell)
                    out << fmt9(*cell);
                else
                    ++result.solver_failures;
            }
            out << "\n";
        }
        result.files.push_back(path);
    }
    return result;
}

}  // namespace halfline
