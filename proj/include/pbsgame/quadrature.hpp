#pragma once

#include <functional>

namespace pbsgame {

struct IntegralResult {
    double value = 0.0;
    double error = 0.0;  // accumulated local error estimates
};

inline constexpr double kQuadAbsTol = 1e-9;
inline constexpr double kQuadRelTol = 1e-8;

// Adaptive Simpson quadrature of fn over [lo, hi]. Refines until the local
// Richardson error estimate meets max(abs_tol, rel_tol*|value|); throws
// convergence_error if that needs more than 2^20 intervals. Deterministic
// for fixed inputs, and exact (to abs_tol) on polynomials up to degree 3.
IntegralResult integrate(const std::function<double(double)>& fn, double lo, double hi,
                         double abs_tol = kQuadAbsTol, double rel_tol = kQuadRelTol);

}  // namespace pbsgame
