#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "halfline/errors.hpp"

namespace halfline {

/// Dense polynomial, coefficients lowest degree first. Degree <= 4 in practice.
struct Poly {
    std::vector<double> coeffs;

    double operator()(double x) const {
        double acc = 0.0;
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    /// Degree after stripping exactly-zero leading coefficients.
    int degree() const {
        int d = static_cast<int>(coeffs.size()) - 1;
        while (d > 0 && coeffs[static_cast<size_t>(d)] == 0.0) --d;
        return d;
    }
};

/// Sign-change interval: lo < hi and f_lo * f_hi <= 0.
struct Bracket {
    double lo, hi;
    double f_lo, f_hi;
};

/// Scan [lo, hi] on a uniform grid and collect every consecutive pair with a
/// sign change, in increasing order. Non-finite grid values are skipped.
/// Returns an empty list when f has no sign change on the grid.
std::vector<Bracket> scan_brackets(const std::function<double(double)>& f,
                                   double lo, double hi, int steps);

/// Plain bisection to absolute interval width <= tol. Deterministic.
double bisect(const Bracket& bracket, const std::function<double(double)>& f, double tol);

/// Gaussian elimination with partial pivoting on a row-major n x n matrix.
/// A pivot with magnitude below pivot_tol (default 1e-13, sized for matrices
/// with O(1) entries) raises SingularMatrixError carrying the pivot index.
/// The computed solution is residual-checked against the inputs. Callers
/// whose matrices legitimately develop tiny trailing pivots pass a smaller
/// tolerance.
template <class Real>
std::vector<Real> solve_linear(std::vector<Real> a, std::vector<Real> b,
                               double pivot_tol = 1e-13) {
    using std::abs;
    const int n = static_cast<int>(b.size());
    if (static_cast<size_t>(n) * n != a.size())
        throw std::invalid_argument("solve_linear: matrix/vector size mismatch");
    const std::vector<Real> a0 = a, b0 = b;

    std::vector<int> perm(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) perm[static_cast<size_t>(i)] = i;
    auto at = [&](int r, int c) -> Real& { return a[static_cast<size_t>(perm[static_cast<size_t>(r)]) * n + c]; };

    for (int col = 0; col < n; ++col) {
        int best = col;
        for (int r = col + 1; r < n; ++r)
            if (abs(at(r, col)) > abs(at(best, col))) best = r;
        std::swap(perm[static_cast<size_t>(col)], perm[static_cast<size_t>(best)]);
        std::swap(b[static_cast<size_t>(col)], b[static_cast<size_t>(best)]);
        const Real pivot = at(col, col);
        if (!(abs(pivot) >= pivot_tol) || pivot == Real(0))
            throw SingularMatrixError(col, static_cast<double>(abs(pivot)));
        for (int r = col + 1; r < n; ++r) {
            const Real m = at(r, col) / pivot;
            if (m == Real(0)) continue;
            at(r, col) = Real(0);
            for (int c = col + 1; c < n; ++c) at(r, c) -= m * at(col, c);
            b[static_cast<size_t>(r)] -= m * b[static_cast<size_t>(col)];
        }
    }
    std::vector<Real> x(static_cast<size_t>(n));
    for (int r = n - 1; r >= 0; --r) {
        Real acc = b[static_cast<size_t>(r)];
        for (int c = r + 1; c < n; ++c) acc -= at(r, c) * x[static_cast<size_t>(c)];
        x[static_cast<size_t>(r)] = acc / at(r, r);
    }

    // backward-stability guard relative to the problem scale
    Real scale(0), resid(0);
    for (int r = 0; r < n; ++r) {
        Real row(0), rs(0);
        for (int c = 0; c < n; ++c) {
            row += a0[static_cast<size_t>(r) * n + c] * x[static_cast<size_t>(c)];
            rs += abs(a0[static_cast<size_t>(r) * n + c] * x[static_cast<size_t>(c)]);
        }
        Real e = abs(row - b0[static_cast<size_t>(r)]);
        if (e > resid) resid = e;
        rs += abs(b0[static_cast<size_t>(r)]);
        if (rs > scale) scale = rs;
    }
    if (scale > Real(0) && resid > Real(1e-6) * scale)
        throw std::runtime_error("solve_linear: residual check failed");
    return x;
}

/// Real roots of a degree-2 polynomial, increasing order; empty when the
/// discriminant is negative. Rejects polys whose normalized degree is not 2.
std::vector<double> quadratic_roots(const Poly& p);

/// Number of leading series terms k such that the unit-amplitude tail
/// sum_{i>k} (1-p)^{i-1} * growth^{(i-1)/2} stays below eps. The gap sequence
/// is assumed to grow by `growth` per two terms; convergence requires
/// growth < 1/(1-p)^2. Callers divide eps by their amplitude scale.
int tail_bound_terms(double p, double growth, double eps);

}  // namespace halfline
