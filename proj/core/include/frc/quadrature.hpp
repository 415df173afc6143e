#pragma once

#include <functional>

#include "frc/errors.hpp"

namespace frc {

// Integration domain. Either endpoint may be +-infinity; lo < hi is required.
struct Interval {
    double lo;
    double hi;
};

struct QuadResult {
    double value;
    double abs_error_estimate;  // >= 0, honest bound up to a small factor
    long evaluations;           // number of integrand evaluations
};

inline constexpr double kQuadRelTol = 1e-10;
inline constexpr double kQuadAbsTol = 1e-12;
inline constexpr int kQuadMaxIntervals = 2000;

// Adaptive Gauss-Kronrod (7-15 pair) integration of f over domain.
//
// Infinite endpoints are mapped to a finite base interval by rational
// substitutions (x = t/(1-t^2) for the full line, x = a + t/(1-t) for a
// half line), so no tail truncation is ever performed. Integrable endpoint
// singularities are handled by adaptive bisection toward the endpoint; the
// Kronrod nodes are interior, so endpoints are never evaluated.
//
// The driver keeps a global heap of subintervals ordered by error estimate
// and always refines the worst one. Subdivision is strictly serial and
// deterministic: identical inputs give identical results.
//
// Stops when the accumulated error estimate drops below
// max(abs_tol, rel_tol * |value|). If the budget of max_intervals
// subintervals is exhausted first, throws divergence_error: either the
// integral diverges or the integrand is too pathological to trust.
QuadResult integrate(const std::function<double(double)>& f, Interval domain,
                     double rel_tol = kQuadRelTol, double abs_tol = kQuadAbsTol,
                     int max_intervals = kQuadMaxIntervals);

}  // namespace frc
