#pragma once

#include <functional>

namespace gslab {

// Adaptive Gauss-Kronrod 7-15 on [a, b]. rel_tol is measured against the
// panel's own integral, abs_tol is an external floor (pass the scale of the
// quantity the result feeds into when the panel itself may be negligible or
// dominated by cancellation noise).
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rel_tol = 1e-12, int max_depth = 32, double abs_tol = 0.0);

// Integral of f over [a, inf). Sums adaptive panels over geometrically
// growing blocks until the increments are negligible; `rate > 0` hints the
// exponential decay scale (block length ~ a few e-foldings). Throws
// DivergentNormError when the block sums fail to decrease.
double integrate_to_infinity(const std::function<double(double)>& f, double a,
                             double rate = 0.0, double rel_tol = 1e-12);

// Derivative at xs[c] of the degree-4 interpolant through (xs[j], ys[j]).
double lagrange_deriv5(const double* xs, const double* ys, int c);

}  // namespace gslab
