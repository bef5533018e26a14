#pragma once

#include <stdexcept>
#include <string>

namespace halfline {

/// Linear solve hit a pivot below the singularity threshold.
class SingularMatrixError : public std::runtime_error {
public:
    SingularMatrixError(int pivot_index, double pivot)
        : std::runtime_error("singular matrix: pivot " + std::to_string(pivot_index) +
                             " has magnitude " + std::to_string(pivot)),
          pivot_index(pivot_index) {}
    int pivot_index;
};

/// Expected-cost series diverges (growth factor >= 1/(1-p)^2).
class DivergenceError : public std::domain_error {
    using std::domain_error::domain_error;
};

/// No qualifying root found in the search range.
class NoRootError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A candidate (beta, R) pair failed the feasibility inequalities.
class InfeasiblePairError : public std::runtime_error {
public:
    InfeasiblePairError(double margin_growth, double margin_cap, const std::string& what)
        : std::runtime_error(what), margin_growth(margin_growth), margin_cap(margin_cap) {}
    double margin_growth;  // x - y - 1
    double margin_cap;     // beta - E/(R/p - F)
};

/// Constructed solution violates the equalization constraint residual.
class ResidualError : public std::runtime_error {
public:
    ResidualError(double residual, const std::string& what)
        : std::runtime_error(what), residual(residual) {}
    double residual;
};

/// Iterative evaluation did not converge within its budget.
class NonConvergenceError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Bisection target has the same verdict on both ends of the range.
class NoTransitionError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A Monte Carlo trial exceeded max_crossings without detection.
class CensoredError : public std::runtime_error {
public:
    CensoredError(long long censored, const std::string& what)
        : std::runtime_error(what), censored(censored) {}
    long long censored;
};

}  // namespace halfline
