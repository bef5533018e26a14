#include "halfline/submonotone.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "halfline/detail/submonotone_core.hpp"
#include "halfline/numerics.hpp"

namespace halfline {

namespace {

using bigfloat = boost::multiprecision::cpp_bin_float_50;

void check_p_open(double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("p must be in (0,1)");
}

double beta_cap(double p) { return 1.0 / ((1.0 - p) * (1.0 - p)); }

// Bisection at extended precision, starting from a double-width bracket that
// is widened slightly if rounding moved the sign change.
template <class F>
bigfloat refine_root(const F& f, double lo, double hi) {
    bigfloat a = lo, b = hi;
    bigfloat fa = f(a), fb = f(b);
    double widen = (hi - lo);
    for (int tries = 0; fa * fb > 0 && tries < 20; ++tries) {
        widen *= 4.0;
        a = lo - widen;
        b = hi + widen;
        fa = f(a);
        fb = f(b);
    }
    if (fa * fb > 0) throw NoRootError("root refinement lost the sign change");
    for (int i = 0; i < 200 && b - a > 1e-45 * (1 + abs(a)); ++i) {
        const bigfloat m = a + (b - a) / 2;
        const bigfloat fm = f(m);
        if (fa * fm <= 0) {
            b = m;
        } else {
            a = m;
            fa = fm;
        }
    }
    return a + (b - a) / 2;
}

struct RootPick {
    bigfloat ratio;
    bigfloat beta;
    std::vector<double> rejected;  // roots >= 3 whose beta was not a valid factor
};

// Smallest discriminant root >= 3 whose beta = -q1/(2 q2) is a valid expansion
// factor. t < 0 selects the limit (t -> infinity) coefficients.
RootPick pick_root(double p, int t, double tol) {
    const bool limit = t < 0;
    auto disc_d = [&](double r) {
        return limit ? detail::limit_disc<double>(p, r) : detail::char_disc<double>(p, r, t);
    };
    const bigfloat bp = p;
    auto disc_b = [&](const bigfloat& r) {
        return limit ? detail::limit_disc<bigfloat>(bp, r) : detail::char_disc<bigfloat>(bp, r, t);
    };

    RootPick pick;
    const auto brackets = scan_brackets(disc_d, 3.0, 8.0, 2000);
    for (const auto& br : brackets) {
        const double r0 = bisect(br, disc_d, tol);
        const bigfloat r = refine_root(disc_b, r0 - 2 * tol, r0 + 2 * tol);
        bigfloat q0, q1, q2;
        if (limit)
            detail::limit_coeffs(bp, r, q0, q1, q2);
        else
            detail::char_coeffs(bp, r, t, q0, q1, q2);
        if (q2 == 0) {
            pick.rejected.push_back(static_cast<double>(r));
            continue;
        }
        const bigfloat beta = -q1 / (2 * q2);
        if (beta > 1 && beta < bigfloat(beta_cap(p))) {
            pick.ratio = r;
            pick.beta = beta;
            return pick;
        }
        pick.rejected.push_back(static_cast<double>(r));
    }
    std::ostringstream msg;
    msg << "no discriminant root in [3,8] with a valid expansion factor (p=" << p;
    if (!limit) msg << ", t=" << t;
    msg << ")";
    if (!pick.rejected.empty()) {
        msg << "; roots with invalid beta:";
        for (double r : pick.rejected) msg << " " << r;
    }
    throw NoRootError(msg.str());
}

SubMonotoneSolution package(double p, int t, double ratio, double beta,
                            std::vector<double> gammas, std::vector<double> per_interval,
                            Feasibility feas, double residual) {
    RatioReport report;
    report.per_interval = std::move(per_interval);
    report.overall = *std::max_element(report.per_interval.begin(), report.per_interval.end());
    report.feasible = feas.feasible;
    report.margin_growth = feas.margin_growth;
    report.margin_cap = feas.margin_cap;
    report.residual13 = residual;
    SubMonotoneParams params(t, beta, std::move(gammas), p);
    return {ratio, std::move(params), std::move(report)};
}

}  // namespace

RatioCoefficients coefficients(double p, double beta) {
    check_p_open(p);
    if (!(beta > 1.0 && beta < beta_cap(p)))
        throw std::invalid_argument("coefficients: beta must lie in (1, 1/(1-p)^2)");
    const auto k = detail::ratio_coeffs<double>(p, beta);
    return {k.a, k.b, k.c, k.d, k.e, k.f};
}

double CharPoly::y(double beta) const { return detail::offset_y<double>(p, beta, ratio); }

CharPoly char_poly(double p, double ratio, int t) {
    check_p_open(p);
    if (!(ratio >= 3.0)) throw std::invalid_argument("char_poly: ratio must be >= 3");
    if (t < 0) throw std::invalid_argument("char_poly: t must be >= 0");
    CharPoly out;
    detail::char_coeffs<double>(p, ratio, t, out.q0, out.q1, out.q2);
    out.x = detail::growth_x<double>(p, ratio);
    out.p = p;
    out.ratio = ratio;
    return out;
}

Feasibility check_feasible(double p, double beta, double ratio) {
    check_p_open(p);
    if (!(beta > 1.0 && beta < beta_cap(p)))
        throw std::invalid_argument("check_feasible: beta must lie in (1, 1/(1-p)^2)");
    const double x = detail::growth_x<double>(p, ratio);
    const double y = detail::offset_y<double>(p, beta, ratio);
    Feasibility f;
    f.margin_growth = x - y - 1.0;
    f.margin_cap = beta - detail::gamma_cap<double>(p, beta, ratio);
    f.feasible = f.margin_growth > 0.0 && f.margin_cap > 0.0;
    return f;
}

std::vector<double> gammas_from(double mult, double offset, int t) {
    if (!(mult > 1.0)) throw std::invalid_argument("gammas_from: mult must exceed 1");
    if (t < 0) throw std::invalid_argument("gammas_from: t must be >= 0");
    return detail::gamma_seq<double>(mult, offset, t);
}

RatioReport interval_ratios(const SubMonotoneParams& params, double p) {
    check_p_open(p);
    if (!(params.beta < beta_cap(p)))
        throw DivergenceError("interval_ratios: beta >= 1/(1-p)^2 for this p");
    auto rs = detail::interval_ratio_seq<double>(p, params.beta, params.gammas);
    RatioReport report;
    report.per_interval = std::move(rs);
    report.overall = *std::max_element(report.per_interval.begin(), report.per_interval.end());
    const Feasibility f = check_feasible(p, params.beta, report.overall);
    report.feasible = f.feasible;
    report.margin_growth = f.margin_growth;
    report.margin_cap = f.margin_cap;
    report.residual13 = detail::residual13<double>(p, params.beta, report.overall, params.t);
    return report;
}

SubMonotoneSolution solve_optimal(double p, int t, double tol) {
    if (!(p >= 0.01 && p <= 0.99))
        throw std::domain_error("solve_optimal: p outside [0.01, 0.99]");
    if (t < 0 || t > 12) throw std::invalid_argument("solve_optimal: supported range is t in [0, 12]");
    if (!(tol > 0.0)) throw std::invalid_argument("solve_optimal: tol must be positive");

    const RootPick pick = pick_root(p, t, tol);
    const bigfloat bp = p;
    const bigfloat& r = pick.ratio;
    const bigfloat& beta = pick.beta;

    const bigfloat x = detail::growth_x<bigfloat>(bp, r);
    const bigfloat y = detail::offset_y<bigfloat>(bp, beta, r);
    const bigfloat margin_growth = x - y - 1;
    const bigfloat margin_cap = beta - detail::gamma_cap<bigfloat>(bp, beta, r);
    if (!(margin_growth > 0) || !(margin_cap > 0)) {
        std::ostringstream msg;
        msg << "solve_optimal: infeasible pair at p=" << p << ", t=" << t << " (";
        if (!(margin_growth > 0)) msg << "x-y-1=" << static_cast<double>(margin_growth);
        if (!(margin_cap > 0))
            msg << (margin_growth > 0 ? "" : ", ")
                << "beta-E/(R/p-F)=" << static_cast<double>(margin_cap);
        msg << ")";
        throw InfeasiblePairError(static_cast<double>(margin_growth),
                                  static_cast<double>(margin_cap), msg.str());
    }

    const bigfloat residual = detail::residual13<bigfloat>(bp, beta, r, t);
    if (!(abs(residual) <= 1e-8))
        throw ResidualError(static_cast<double>(residual),
                            "solve_optimal: equalization residual above 1e-8");

    const std::vector<bigfloat> gam = detail::gamma_seq<bigfloat>(x, y, t);
    bigfloat prev = 1;
    for (const bigfloat& g : gam) {
        if (!(g > prev))
            throw InfeasiblePairError(static_cast<double>(margin_growth),
                                      static_cast<double>(margin_cap),
                                      "solve_optimal: gamma ordering failed");
        prev = g;
    }
    if (!(beta > prev))
        throw InfeasiblePairError(static_cast<double>(margin_growth),
                                  static_cast<double>(margin_cap),
                                  "solve_optimal: gamma_t reached beta");

    const std::vector<bigfloat> ratios = detail::interval_ratio_seq<bigfloat>(bp, beta, gam);
    bigfloat lo = ratios.front(), hi = ratios.front();
    for (const bigfloat& v : ratios) {
        if (v < lo) lo = v;
        if (v > hi) hi = v;
    }
    if (!(hi - lo <= 1e-8 * hi))
        throw ResidualError(static_cast<double>(hi - lo),
                            "solve_optimal: interval ratios failed to equalize");

    std::vector<double> gammas_d, ratios_d;
    gammas_d.reserve(gam.size());
    ratios_d.reserve(ratios.size());
    for (const bigfloat& g : gam) gammas_d.push_back(static_cast<double>(g));
    for (const bigfloat& v : ratios) ratios_d.push_back(static_cast<double>(v));

    Feasibility feas;
    feas.feasible = true;
    feas.margin_growth = static_cast<double>(margin_growth);
    feas.margin_cap = static_cast<double>(margin_cap);
    return package(p, t, static_cast<double>(r), static_cast<double>(beta), std::move(gammas_d),
                   std::move(ratios_d), feas, static_cast<double>(residual));
}

SubMonotoneSolution heuristic_t1(double p) {
    check_p_open(p);
    // evaluated at extended precision: near the endpoints of (0,1) the gamma
    // and margin structure sits many digits below the leading terms
    const bigfloat bp = p;
    const bigfloat r = sqrt((bp - 2) * (bp - 1) * (bp * (bp * (4 * bp - 3) + 5) + 2)) +
                       4 / (2 - bp) - (2 - bp) * bp;
    const bigfloat beta = 1 / (1 - bp);
    const bigfloat g1 = detail::gamma_cap<bigfloat>(bp, beta, r);
    if (!(g1 > 0 && g1 < beta))
        throw ResidualError(static_cast<double>(g1), "heuristic_t1: gamma_1 left (0, beta)");
    const bigfloat x = detail::growth_x<bigfloat>(bp, r);
    const bigfloat y = detail::offset_y<bigfloat>(bp, beta, r);
    Feasibility feas;
    feas.margin_growth = static_cast<double>(x - y - 1);
    feas.margin_cap = static_cast<double>(beta - g1);
    feas.feasible = feas.margin_growth > 0.0 && feas.margin_cap > 0.0;
    const auto rs = detail::interval_ratio_seq<bigfloat>(bp, beta, {g1});
    return package(p, 1, static_cast<double>(r), static_cast<double>(beta),
                   {static_cast<double>(g1)},
                   {static_cast<double>(rs[0]), static_cast<double>(rs[1])}, feas,
                   static_cast<double>(detail::residual13<bigfloat>(bp, beta, r, 1)));
}

namespace {

// Equalization constraint at beta = 1/(1-p), t = 2, as displayed; clearing its
// denominators yields a cubic in R whose real root is the heuristic ratio.
template <class Real>
Real t2_constraint(const Real& p, const Real& r) {
    const Real a = p - 1;
    return (r * r / (a * a * p * p) -
            8 * ((p * ((p - 5) * p + 10) - 7) * p * p + 4) * (p - 2) * (p - 2) /
                (p * (p * (p * (2 * p - 9) - r + 12) + 2 * (r - 4))) -
            4 * p * p +
            (p * (p * (-4 * (p - 7) * p - 71) + 72) - 16) /
                ((p * p - 3 * p + 2) * (p * p - 3 * p + 2)) -
            2 * (p * ((p - 6) * p + 13) - 11) * r / ((p - 2) * a * a) + 10 * p - 16 / p) /
           4;
}

}  // namespace

SubMonotoneSolution heuristic_t2(double p) {
    check_p_open(p);
    const bigfloat bp = p;
    auto lhs = [p](double r) { return t2_constraint<double>(p, r); };
    auto lhs_big = [&bp](const bigfloat& r) { return t2_constraint<bigfloat>(bp, r); };
    const auto brackets = scan_brackets(lhs, 3.0, 8.0, 4000);
    for (const auto& br : brackets) {
        const double r0 = bisect(br, lhs, 1e-12);
        if (!(std::abs(lhs(r0)) <= 1e-6)) continue;  // pole crossing, not a root
        const bigfloat r = refine_root(lhs_big, r0 - 1e-11, r0 + 1e-11);

        const bigfloat beta = 1 / (1 - bp);
        const bigfloat x = detail::growth_x<bigfloat>(bp, r);
        const bigfloat y = detail::offset_y<bigfloat>(bp, beta, r);
        const auto gam = detail::gamma_seq<bigfloat>(x, y, 2);
        if (!(1 < gam[0] && gam[0] < gam[1] && gam[1] < beta))
            throw ResidualError(static_cast<double>(gam[0]),
                                "heuristic_t2: gamma ordering left (1, beta)");
        Feasibility feas;
        feas.margin_growth = static_cast<double>(x - y - 1);
        feas.margin_cap = static_cast<double>(beta - detail::gamma_cap<bigfloat>(bp, beta, r));
        feas.feasible = feas.margin_growth > 0.0 && feas.margin_cap > 0.0;
        const auto rs = detail::interval_ratio_seq<bigfloat>(bp, beta, gam);
        return package(p, 2, static_cast<double>(r), static_cast<double>(beta),
                       {static_cast<double>(gam[0]), static_cast<double>(gam[1])},
                       {static_cast<double>(rs[0]), static_cast<double>(rs[1]),
                        static_cast<double>(rs[2])},
                       feas, static_cast<double>(detail::residual13<bigfloat>(bp, beta, r, 2)));
    }
    throw NoRootError("heuristic_t2: root isolation failed on [3, 8]");
}

LimitRatio limit_ratio(double p) {
    check_p_open(p);
    const RootPick pick = pick_root(p, -1, 1e-13);
    const bigfloat bp = p;
    const bigfloat x = detail::growth_x<bigfloat>(bp, pick.ratio);
    if (!(x > 1))
        throw ResidualError(static_cast<double>(x), "limit_ratio: recurrence multiplier <= 1");
    const bigfloat margin =
        pick.beta - detail::gamma_cap<bigfloat>(bp, pick.beta, pick.ratio);
    if (!(margin > 0))
        throw InfeasiblePairError(0.0, static_cast<double>(margin),
                                  "limit_ratio: cap margin not positive at the limit pair");
    return {static_cast<double>(pick.ratio), static_cast<double>(pick.beta),
            static_cast<double>(x), static_cast<double>(margin)};
}

namespace {
void check_solver_domain(double p, int t) {
    if (!(p >= 0.01 && p <= 0.99)) throw std::domain_error("p outside [0.01, 0.99]");
    if (t > 12) throw std::invalid_argument("supported range is t in [0, 12]");
}
}  // namespace

double ratio_improvement(double p, int t) {
    if (t < 1) throw std::invalid_argument("ratio_improvement: t must be >= 1");
    check_solver_domain(p, t);
    const bigfloat prev = pick_root(p, t - 1, 1e-13).ratio;
    const bigfloat cur = pick_root(p, t, 1e-13).ratio;
    return static_cast<double>(prev - cur);
}

double ratio_gap_to_limit(double p, int t) {
    if (t < 0) throw std::invalid_argument("ratio_gap_to_limit: t must be >= 0");
    check_solver_domain(p, t);
    const bigfloat cur = pick_root(p, t, 1e-13).ratio;
    const bigfloat bar = pick_root(p, -1, 1e-13).ratio;
    return static_cast<double>(cur - bar);
}

double beta_relative_change(double p, int t) {
    if (t < 1) throw std::invalid_argument("beta_relative_change: t must be >= 1");
    check_solver_domain(p, t);
    const bigfloat prev = pick_root(p, t - 1, 1e-13).beta;
    const bigfloat cur = pick_root(p, t, 1e-13).beta;
    return static_cast<double>((cur - prev) / cur);
}

}  // namespace halfline
