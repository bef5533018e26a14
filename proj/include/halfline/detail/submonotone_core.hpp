#pragma once

// Templated closed forms shared by the double-precision API and the
// extended-precision solver internals. x(p,R)^t reaches ~1e23 near the domain
// edges, so the solver instantiates these with cpp_bin_float_50.

#include <vector>

namespace halfline::detail {

template <class Real>
struct Coeffs {
    Real a, b, c, d, e, f;
};

template <class Real>
Coeffs<Real> ratio_coeffs(const Real& p, const Real& beta) {
    const Real omp = 1 - p;
    const Real den = 1 - beta * omp * omp;
    Coeffs<Real> k;
    k.a = 2 * omp;
    k.b = 2 / (beta - 1) + 2 * omp * omp * omp / den;
    k.c = 2 * p * omp * omp * omp * (2 - p) * beta / den;
    k.d = (-2 * p * p * p * p + 12 * p * p * p - 26 * p * p + 23 * p - 4) / (2 - p);
    k.e = 2 * p * omp * (2 - p) * beta / den;
    k.f = p * (2 * (beta * omp + 1) / ((beta - 1) * den) + (5 - 2 * p) / (2 - p));
    return k;
}

template <class Real>
Real coeff_d(const Real& p) {
    return (-2 * p * p * p * p + 12 * p * p * p - 26 * p * p + 23 * p - 4) / (2 - p);
}

/// gamma recurrence multiplier x = (R/p - D)/A; independent of beta.
template <class Real>
Real growth_x(const Real& p, const Real& r) {
    return (r / p - coeff_d(p)) / (2 * (1 - p));
}

/// Equalized top turning fraction gamma_t = E/(R/p - F).
template <class Real>
Real gamma_cap(const Real& p, const Real& beta, const Real& r) {
    const Coeffs<Real> k = ratio_coeffs(p, beta);
    return k.e / (r / p - k.f);
}

/// gamma recurrence offset y = (B*E/(R/p - F) + C)/A.
template <class Real>
Real offset_y(const Real& p, const Real& beta, const Real& r) {
    const Coeffs<Real> k = ratio_coeffs(p, beta);
    return (k.b * k.e / (r / p - k.f) + k.c) / k.a;
}

template <class Real>
Real pow_int(Real base, int n) {
    Real acc(1);
    while (n > 0) {
        if (n & 1) acc *= base;
        base *= base;
        n >>= 1;
    }
    return acc;
}

/// Coefficients of the quadratic-in-beta characteristic polynomial of (p, R).
/// The q0 sign follows the internally consistent convention (the one under
/// which the t = 0 discriminant factors with roots (4 +- 4 sqrt(1-p))/(2-p) - p).
template <class Real>
void char_coeffs(const Real& p, const Real& r, int t, Real& q0, Real& q1, Real& q2) {
    const Real xt = pow_int(growth_x(p, r), t);
    const Real pm2 = p - 2;
    q0 = -(p * p * (2 * p * ((p - 6) * p + 12) - 17) - pm2 * r) * (p * p + pm2 * r) * xt;
    q1 = 2 * pm2 * pm2 * pm2 * pm2 * (p - 1) * p * p * p * (r - p) +
         xt * ((p * (p * (2 * p * (p * (2 * p - 19) + 74) - 297) + 308) - 134) * p * p * p * p -
               2 * pm2 * (p * (p * ((p - 8) * p + 25) - 35) + 20) * p * p * r -
               pm2 * pm2 * (pm2 * p + 2) * r * r);
    q2 = (p - 1) * (2 * pm2 * pm2 * pm2 * pm2 * p * p * p * (3 * p - r) -
                    (p - 1) * (p * p * (2 * p - 5) - pm2 * r) *
                        ((2 * (p - 4) * p + 9) * p * p + pm2 * r) * xt);
}

template <class Real>
Real char_disc(const Real& p, const Real& r, int t) {
    Real q0, q1, q2;
    char_coeffs(p, r, t, q0, q1, q2);
    return q1 * q1 - 4 * q0 * q2;
}

/// t -> infinity limit coefficients (the x^t cofactors of q0, q1, q2).
template <class Real>
void limit_coeffs(const Real& p, const Real& r, Real& q0, Real& q1, Real& q2) {
    const Real pm2 = p - 2;
    q0 = -(p * p * (2 * p * ((p - 6) * p + 12) - 17) - pm2 * r) * (p * p + pm2 * r);
    q1 = (p * (p * (2 * p * (p * (2 * p - 19) + 74) - 297) + 308) - 134) * p * p * p * p -
         2 * pm2 * (p * (p * ((p - 8) * p + 25) - 35) + 20) * p * p * r -
         pm2 * pm2 * (pm2 * p + 2) * r * r;
    q2 = -(p - 1) * (p - 1) * (p * p * (2 * p - 5) - pm2 * r) *
         ((2 * (p - 4) * p + 9) * p * p + pm2 * r);
}

template <class Real>
Real limit_disc(const Real& p, const Real& r) {
    Real q0, q1, q2;
    limit_coeffs(p, r, q0, q1, q2);
    return q1 * q1 - 4 * q0 * q2;
}

/// Left side of the equalization constraint:
/// (1 - y/(x-1)) x^t + y/(x-1) - E/(R/p - F).
template <class Real>
Real residual13(const Real& p, const Real& beta, const Real& r, int t) {
    const Real x = growth_x(p, r);
    const Real y = offset_y(p, beta, r);
    const Real s = y / (x - 1);
    return (1 - s) * pow_int(x, t) + s - gamma_cap(p, beta, r);
}

/// gamma_i = (1 - y/(x-1)) x^i + y/(x-1) for i = 1..t; solves
/// g_i = x*g_{i-1} - y with g_0 = 1.
template <class Real>
std::vector<Real> gamma_seq(const Real& x, const Real& y, int t) {
    const Real s = y / (x - 1);
    std::vector<Real> out;
    out.reserve(static_cast<size_t>(t));
    Real xi(1);
    for (int i = 1; i <= t; ++i) {
        xi *= x;
        out.push_back((1 - s) * xi + s);
    }
    return out;
}

/// Per-interval worst-case ratios R_1..R_{t+1} for the given gammas.
template <class Real>
std::vector<Real> interval_ratio_seq(const Real& p, const Real& beta,
                                     const std::vector<Real>& gammas) {
    const Coeffs<Real> k = ratio_coeffs(p, beta);
    const int t = static_cast<int>(gammas.size());
    const Real g_top = t > 0 ? gammas.back() : Real(1);
    std::vector<Real> out;
    out.reserve(static_cast<size_t>(t) + 1);
    Real below(1);
    for (int i = 0; i < t; ++i) {
        out.push_back(p * ((k.a * gammas[static_cast<size_t>(i)] + k.b * g_top + k.c) / below + k.d));
        below = gammas[static_cast<size_t>(i)];
    }
    out.push_back(p * (k.e / g_top + k.f));
    return out;
}

}  // namespace halfline::detail
