#pragma once

#include <functional>
#include <vector>

#include "halfline/errors.hpp"

namespace halfline {

/// Expansion factor b minimizing the geometric monotone strategy's ratio:
/// b = 1 / (sqrt(1-p) * (2 - p - sqrt(1-p))). Lies in (1, 1/(1-p)^2).
double optimal_base(double p);

/// Worst-case ratio of the geometric monotone strategy with base b:
/// p*2b/(b-1) + p*2b(1-p)/(1 - b(1-p)^2) + p^2/(2-p). Requires 1 < b < 1/(1-p)^2.
double monotone_cr_formula(double p, double b);

/// Best ratio over all monotone strategies: (4 + 4*sqrt(1-p))/(2-p) - p.
double optimal_monotone_cr(double p);

/// Worst-case ratio over placements inside interval (x_r, x_{r+1}) of the
/// monotone strategy with turning points x (1-based generator):
/// 2p/x_r * sum_{i<=r} x_i + 2p/x_r * sum_{i>=1} (1-p)^{2i-1} x_{r+i} + p^2/(2-p).
double worst_case_cr_interval(const std::function<double(int)>& x, double p, int r);

/// The ell x ell certificate system for the monotone lower bound at candidate
/// ratio c: row k (k = 0..ell-1) has ones below the diagonal, alpha on it,
/// decaying powers of (1-p) above, and the truncation tail folded into the
/// last column. Right-hand side (-alpha, -1, ..., -1).
struct LowerBoundSystem {
    int ell;
    double p;
    double c;
    double alpha;                // 1/2 + 1/(2-p) - c/(2p)
    std::vector<double> matrix;  // row-major ell x ell
    std::vector<double> rhs;

    double entry(int row, int col) const {  // 1-based
        return matrix[static_cast<size_t>(row - 1) * ell + (col - 1)];
    }
};

LowerBoundSystem lower_bound_system(double p, double c, int ell);

struct LowerBoundVerdict {
    double c;
    int ell;
    bool monotone;
    std::vector<double> f;  // f_0 = 1 prepended, then the solved f_1..f_ell
};

/// Solves the certificate system and reports whether it defines a monotone
/// (positive, strictly increasing) sequence of turning points. The solved
/// window is additionally extended by the system's interior three-term
/// recurrence (horizon 2500*ell) so that slow oscillation past the window is
/// detected. The solve runs at extended precision internally; the reported f
/// vector is rounded to double.
LowerBoundVerdict lower_bound_verdict(double p, double c, int ell);

/// Transition point of the verdict on c in [3, 8] via bisection to width tol;
/// ties resolve toward larger c. Throws NoTransitionError when the verdict is
/// constant on the interval.
double lower_bound_threshold(double p, int ell, double tol);

}  // namespace halfline
