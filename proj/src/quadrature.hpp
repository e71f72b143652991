#pragma once

#include <functional>
#include <vector>

namespace stefanfront {

struct QuadResult {
    double value = 0.0;
    double abs_error = 0.0;
    long evaluations = 0;
    bool converged = true;
};

/// Adaptive Gauss-Kronrod (7,15) quadrature on [lo, hi].
/// Subdivides until the local error estimate meets rel_tol relative to the
/// whole integral, or recursion depth 40 is reached (converged=false then).
/// Throws std::invalid_argument if lo >= hi and std::runtime_error on a
/// non-finite integrand value.
QuadResult integrate(const std::function<double(double)>& fn, double lo, double hi,
                     double rel_tol = 1e-10);

/// Same, but splits the range at the given interior breakpoints first
/// (callers pass trial-function or reaction discontinuities).
QuadResult integrate_split(const std::function<double(double)>& fn, double lo, double hi,
                           const std::vector<double>& interior_breaks, double rel_tol = 1e-10);

}  // namespace stefanfront
