#pragma once

#include <functional>
#include <span>

namespace cqsoliton {

struct QuadratureResult {
    double value = 0.0;
    /// Kronrod error estimate plus any certified truncation bound.
    double error_bound = 0.0;
};

/// Adaptive Gauss-Kronrod integration of f over [a, b], split at the given
/// interior breakpoints (ignored when outside (a, b)).
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    std::span<const double> breakpoints = {}, double rel_tol = 1e-13);

/// Integral of f over [0, inf). `tail_bound(X)` must bound the integral of
/// |f| over [X, inf); the cutoff starts at `initial_cutoff` and doubles until
/// that bound drops below `tail_tol`. The bound is added to error_bound.
QuadratureResult integrate_half_line(const std::function<double(double)>& f, double initial_cutoff,
                                     const std::function<double(double)>& tail_bound, double tail_tol,
                                     std::span<const double> breakpoints = {}, double rel_tol = 1e-13);

}  // namespace cqsoliton
