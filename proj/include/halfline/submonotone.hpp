#pragma once

#include <vector>

#include "halfline/trajectory.hpp"

namespace halfline {

/// The six aggregation constants of the per-interval worst-case ratio formula
/// (a is beta-free, d is beta-free; b, c, e, f have a pole at beta = 1/(1-p)^2).
struct RatioCoefficients {
    double a, b, c, d, e, f;
};

RatioCoefficients coefficients(double p, double beta);

/// Quadratic-in-beta characteristic polynomial q0 + q1*beta + q2*beta^2 of the
/// pair (p, R), plus the beta-free gamma recurrence multiplier x. The
/// recurrence offset y depends on beta and is evaluated lazily.
struct CharPoly {
    double q0, q1, q2;
    double x;
    double p, ratio;  // defining inputs

    double y(double beta) const;
};

CharPoly char_poly(double p, double ratio, int t);

struct Feasibility {
    bool feasible;
    double margin_growth;  // x - y - 1 > 0 keeps the gammas increasing
    double margin_cap;     // beta - E/(R/p - F) > 0 keeps gamma_t below beta
};

Feasibility check_feasible(double p, double beta, double ratio);

/// gamma_i = (1 - offset/(mult-1)) mult^i + offset/(mult-1), i = 1..t; the
/// closed form of g_i = mult*g_{i-1} - offset with g_0 = 1. Requires mult > 1.
std::vector<double> gammas_from(double mult, double offset, int t);

struct RatioReport {
    std::vector<double> per_interval;  // R_1..R_{t+1}
    double overall;                    // max of per_interval
    bool feasible;
    double margin_growth;  // x - y - 1 at R = overall
    double margin_cap;     // beta - E/(R/p - F) at R = overall
    double residual13;     // equalization constraint left side at R = overall
};

/// Worst-case ratio of each hop interval for user-supplied
/// parameters. Feasibility and residual are evaluated against R = overall.
RatioReport interval_ratios(const SubMonotoneParams& params, double p);

struct SubMonotoneSolution {
    double ratio;
    SubMonotoneParams params;
    RatioReport report;
};

/// Characteristic-polynomial construction of a t-sub-monotone strategy:
/// R = smallest discriminant root >= 3 whose beta = -q1/(2 q2) is a valid
/// expansion factor, gammas from the recurrence closed form. The returned
/// strategy provably achieves ratio R; whether it is optimal within the
/// family is conjectural. Root refinement, margins, residual and the report
/// are computed at extended precision internally (the raw formulas lose all
/// precision once x^t is large). Supported for p in [0.01, 0.99] and
/// t in [0, 12]; near p = 0.01 with t >= 11 the residual guard may reject.
SubMonotoneSolution solve_optimal(double p, int t, double tol = 1e-13);

/// Closed-form 1-sub-monotone strategy with beta fixed to 1/(1-p):
/// R = sqrt((p-2)(p-1)(p(p(4p-3)+5)+2)) + 4/(2-p) - (2-p)p.
SubMonotoneSolution heuristic_t1(double p);

/// 2-sub-monotone strategy with beta fixed to 1/(1-p); R is the real root of
/// the cubic obtained by clearing denominators of the equalization constraint.
SubMonotoneSolution heuristic_t2(double p);

struct LimitRatio {
    double ratio;       // smallest valid root >= 3 of the limit quartic
    double beta;        // -q1/(2 q2) of the limit coefficients
    double x;           // gamma recurrence multiplier at (p, ratio); stays > 4
    double margin_cap;  // beta - E/(R/p - F) at the limit pair
};

/// The t -> infinity limit of the achievable ratio.
LimitRatio limit_ratio(double p);

// Extended-precision differences for figure data and acceptance checks; the
// raw double-rounded ratios collapse to equal values at small p.
double ratio_improvement(double p, int t);     // R_{t-1} - R_t
double ratio_gap_to_limit(double p, int t);    // R_t - limit ratio
double beta_relative_change(double p, int t);  // (beta_t - beta_{t-1}) / beta_t

}  // namespace halfline
