#include "halfline/numerics.hpp"

#include <algorithm>
#include <cmath>

namespace halfline {

std::vector<Bracket> scan_brackets(const std::function<double(double)>& f,
                                   double lo, double hi, int steps) {
    if (!(lo < hi)) throw std::invalid_argument("scan_brackets: requires lo < hi");
    if (steps < 1) throw std::invalid_argument("scan_brackets: requires steps >= 1");
    std::vector<Bracket> out;
    double px = lo, pf = f(lo);
    for (int i = 1; i <= steps; ++i) {
        const double x = lo + (hi - lo) * i / steps;
        const double fx = f(x);
        // a zero landing exactly on a grid point counts once, on its left pair
        if (std::isfinite(pf) && std::isfinite(fx) && pf != 0.0 &&
            (pf * fx < 0.0 || fx == 0.0)) {
            out.push_back({px, x, pf, fx});
        }
        if (std::isfinite(fx)) {
            px = x;
            pf = fx;
        }
    }
    return out;
}

double bisect(const Bracket& bracket, const std::function<double(double)>& f, double tol) {
    if (!(bracket.lo < bracket.hi) || bracket.f_lo * bracket.f_hi > 0.0)
        throw std::invalid_argument("bisect: invalid bracket");
    if (!(tol > 0.0)) throw std::invalid_argument("bisect: tol must be positive");
    double a = bracket.lo, b = bracket.hi, fa = bracket.f_lo;
    while (b - a > tol) {
        const double m = a + (b - a) / 2;
        if (m == a || m == b) break;  // hit double spacing
        const double fm = f(m);
        if (fa * fm <= 0.0) {
            b = m;
        } else {
            a = m;
            fa = fm;
        }
    }
    return a + (b - a) / 2;
}

std::vector<double> quadratic_roots(const Poly& p) {
    if (p.degree() != 2) throw std::invalid_argument("quadratic_roots: degree must be exactly 2");
    const double a = p.coeffs[2], b = p.coeffs[1], c = p.coeffs[0];
    const double disc = b * b - 4.0 * a * c;
    if (disc < 0.0) return {};
    // stable form: avoid cancellation between -b and sqrt(disc)
    const double s = std::sqrt(disc);
    const double q = -0.5 * (b + std::copysign(s, b));
    std::vector<double> roots;
    if (q != 0.0) {
        roots.push_back(q / a);
        roots.push_back(c / q);
    } else {  // b == 0 and disc == 0 edge
        roots.push_back(0.0);
        roots.push_back(-b / a);
    }
    std::sort(roots.begin(), roots.end());
    if (disc == 0.0) roots.resize(1);
    return roots;
}

int tail_bound_terms(double p, double growth, double eps) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("tail_bound_terms: p must be in (0,1)");
    if (!(eps > 0.0)) throw std::invalid_argument("tail_bound_terms: eps must be positive");
    const double limit = 1.0 / ((1.0 - p) * (1.0 - p));
    if (!(growth >= 1.0 && growth < limit))
        throw DivergenceError("tail_bound_terms: growth must lie in [1, 1/(1-p)^2)");
    const double rho = (1.0 - p) * std::sqrt(growth);
    // tail after k terms: rho^k / (1 - rho) < eps
    const double k = std::ceil(std::log(eps * (1.0 - rho)) / std::log(rho));
    return std::max(1, static_cast<int>(k));
}

}  // namespace halfline
