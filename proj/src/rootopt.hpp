#pragma once

#include <functional>
#include <utility>
#include <vector>

namespace stefanfront {

/// Bisection root of fn on [lo, hi]; requires fn(lo)*fn(hi) <= 0.
/// Returns the bracket midpoint once the bracket width is <= tol.
double bisect(const std::function<double(double)>& fn, double lo, double hi, double tol);

struct ScalarOpt {
    double arg = 0.0;
    double value = 0.0;
};

/// Golden-section maximization on [lo, hi]. Exact for unimodal functions;
/// otherwise returns the best point seen (no global guarantee).
ScalarOpt maximize_scalar(const std::function<double(double)>& fn, double lo, double hi,
                          double tol);

struct VectorOpt {
    std::vector<double> arg;
    double value = 0.0;
    long iterations = 0;
};

/// Nelder-Mead maximization (simplex descent on -fn) with restart when the
/// simplex collapses away from convergence. Deterministic given x0.
/// Dimension is capped at 6; throws std::runtime_error after 1e4 iterations
/// or on a non-finite objective value.
VectorOpt nelder_mead(const std::function<double(const std::vector<double>&)>& fn,
                      const std::vector<double>& x0, double tol);

}  // namespace stefanfront
