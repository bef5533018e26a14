#include "halfline/monotone.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>

#include "halfline/numerics.hpp"

namespace halfline {

namespace {
using bigfloat = boost::multiprecision::cpp_bin_float_50;

void check_p(double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("p must be in (0,1)");
}
}  // namespace

double optimal_base(double p) {
    check_p(p);
    const double s = std::sqrt(1.0 - p);
    const double b = 1.0 / (s * (2.0 - p - s));
    return b;
}

double monotone_cr_formula(double p, double b) {
    check_p(p);
    const double omp2 = (1.0 - p) * (1.0 - p);
    if (!(b > 1.0 && b < 1.0 / omp2))
        throw std::invalid_argument("monotone_cr_formula: b must lie in (1, 1/(1-p)^2)");
    return p * 2.0 * b / (b - 1.0) + p * 2.0 * b * (1.0 - p) / (1.0 - b * omp2) +
           p * p / (2.0 - p);
}

double optimal_monotone_cr(double p) {
    check_p(p);
    return (4.0 + 4.0 * std::sqrt(1.0 - p)) / (2.0 - p) - p;
}

double worst_case_cr_interval(const std::function<double(int)>& x, double p, int r) {
    check_p(p);
    if (r < 1) throw std::invalid_argument("worst_case_cr_interval: r must be >= 1");
    const double omp2 = (1.0 - p) * (1.0 - p);
    const double xr = x(r);

    double head = 0.0, prev = 0.0;
    for (int i = 1; i <= r; ++i) {
        const double xi = x(i);
        if (!(xi > prev)) throw std::invalid_argument("turning points must increase");
        prev = xi;
        head += xi;
    }

    double tail = 0.0, w = (1.0 - p);  // (1-p)^{2i-1} at i=1
    for (int i = 1;; ++i) {
        const double xi = x(r + i);
        if (!(xi > prev)) throw std::invalid_argument("turning points must increase");
        if (omp2 * xi >= prev)
            throw DivergenceError("worst_case_cr_interval: growth ratio >= 1/(1-p)^2");
        const double term = w * xi;
        tail += term;
        // remaining tail is geometric with ratio (x_{i+1}/x_i)*(1-p)^2 < 1
        const double q = omp2 * xi / prev;
        prev = xi;
        w *= omp2;
        if (i >= 4 && term * q / (1.0 - q) < 1e-14 * (head + tail)) break;
        if (i > 10000000) throw NonConvergenceError("worst_case_cr_interval: tail did not settle");
    }
    return 2.0 * p / xr * head + 2.0 * p / xr * tail + p * p / (2.0 - p);
}

LowerBoundSystem lower_bound_system(double p, double c, int ell) {
    check_p(p);
    if (!(c > 0.0)) throw std::invalid_argument("lower_bound_system: c must be positive");
    if (ell < 2) throw std::invalid_argument("lower_bound_system: ell must be >= 2");

    LowerBoundSystem sys;
    sys.ell = ell;
    sys.p = p;
    sys.c = c;
    sys.alpha = 0.5 + 1.0 / (2.0 - p) - c / (2.0 * p);
    sys.matrix.assign(static_cast<size_t>(ell) * ell, 0.0);
    sys.rhs.assign(static_cast<size_t>(ell), -1.0);
    sys.rhs[0] = -sys.alpha;

    const double omp = 1.0 - p;
    for (int k = 0; k < ell; ++k) {
        double* row = &sys.matrix[static_cast<size_t>(k) * ell];
        for (int i = 1; i <= ell; ++i) {
            if (i <= k - 1)
                row[i - 1] = 1.0;
            else if (i == k)
                row[i - 1] = sys.alpha;
            else
                row[i - 1] = std::pow(omp, 2 * (i - k) - 1);
        }
        row[ell - 1] += std::pow(omp, 2 * (ell - k) + 1) / (p * (2.0 - p));
    }
    return sys;
}

namespace {

// The tight system's interior reduces, by differencing consecutive rows twice,
// to a three-term recurrence with constant coefficients. Recover those
// coefficients numerically from three mid-matrix rows.
struct TailRecurrence {
    double on_prev, on_cur, on_next;  // c_- f_{k-1} + c0 f_k + c_+ f_{k+1} = 0
};

TailRecurrence interior_recurrence(const LowerBoundSystem& sys) {
    const int n = sys.ell;
    const int k = n / 2;
    if (k < 2 || k + 2 >= n)
        throw std::invalid_argument("interior_recurrence: ell too small");
    const double omp2 = (1.0 - sys.p) * (1.0 - sys.p);
    auto row = [&](int r, int c) { return sys.matrix[static_cast<size_t>(r) * n + c]; };
    // d1 = (row k-1) - (1-p)^2 (row k),  d2 = (row k) - (1-p)^2 (row k+1);
    // d2 - d1 is supported on columns k-1, k, k+1 (0-based k-2, k-1, k).
    auto diffed = [&](int c) {
        const double d1 = row(k - 1, c) - omp2 * row(k, c);
        const double d2 = row(k, c) - omp2 * row(k + 1, c);
        return d2 - d1;
    };
    return {diffed(k - 2), diffed(k - 1), diffed(k)};
}

}  // namespace

LowerBoundVerdict lower_bound_verdict(double p, double c, int ell) {
    const LowerBoundSystem sys = lower_bound_system(p, c, ell);

    // Solution components span b_p^ell (about 1e48 at p=0.9, ell=80), which
    // wrecks double-precision forward accuracy; solve at extended precision.
    std::vector<bigfloat> a(sys.matrix.size()), b(sys.rhs.size());
    for (size_t i = 0; i < a.size(); ++i) a[i] = sys.matrix[i];
    for (size_t i = 0; i < b.size(); ++i) b[i] = sys.rhs[i];
    // trailing pivots of this system are legitimately tiny (the last column
    // decays like (1-p)^{2 ell}); only an exact degeneracy counts as singular
    std::vector<bigfloat> fx = solve_linear(std::move(a), std::move(b), 1e-120);

    LowerBoundVerdict verdict;
    verdict.c = c;
    verdict.ell = ell;
    verdict.f.resize(static_cast<size_t>(ell) + 1);
    verdict.f[0] = 1.0;
    for (int i = 0; i < ell; ++i)
        verdict.f[static_cast<size_t>(i) + 1] = static_cast<double>(fx[static_cast<size_t>(i)]);

    bool mono = true;
    bigfloat prev = 1;
    for (const bigfloat& v : fx) {
        if (!(v > 0 && v > prev)) {
            mono = false;
            break;
        }
        prev = v;
    }

    if (mono && ell >= 6) {
        // Extend by the interior recurrence: a candidate ratio below the true
        // bound produces slow oscillation that the solved window may not reach.
        const TailRecurrence rec = interior_recurrence(sys);
        if (rec.on_next == 0.0) {
            mono = false;
        } else {
            double f_prev = static_cast<double>(fx[static_cast<size_t>(ell) - 2]);
            double f_cur = static_cast<double>(fx[static_cast<size_t>(ell) - 1]);
            const long horizon = 2500L * ell;
            for (long i = 0; i < horizon; ++i) {
                double f_next = -(rec.on_cur * f_cur + rec.on_prev * f_prev) / rec.on_next;
                if (!(f_next > f_cur)) {
                    mono = false;
                    break;
                }
                if (f_next > 1e250) {  // rescale; monotonicity is scale-free
                    f_cur /= f_next;
                    f_next = 1.0;
                }
                f_prev = f_cur;
                f_cur = f_next;
            }
        }
    }
    verdict.monotone = mono;
    return verdict;
}

double lower_bound_threshold(double p, int ell, double tol) {
    check_p(p);
    if (ell < 4) throw std::invalid_argument("lower_bound_threshold: ell must be >= 4");
    if (!(tol > 0.0)) throw std::invalid_argument("lower_bound_threshold: tol must be positive");

    double lo = 3.0, hi = 8.0;
    const bool v_lo = lower_bound_verdict(p, lo, ell).monotone;
    const bool v_hi = lower_bound_verdict(p, hi, ell).monotone;
    if (v_lo == v_hi)
        throw NoTransitionError("lower_bound_threshold: verdict constant on [3, 8]");
    while (hi - lo > tol) {
        const double mid = lo + (hi - lo) / 2;
        if (lower_bound_verdict(p, mid, ell).monotone == v_hi)
            hi = mid;
        else
            lo = mid;
    }
    return hi;  // conservative side: the smallest c verified monotone
}

}  // namespace halfline
