#pragma once

#include <functional>

namespace ssou {

// Finds the root of an increasing-through-zero function on a bracketing
// interval [lo, hi] with f(lo) <= 0 <= f(hi). Bisection narrows the bracket,
// Newton steps (numerical derivative unless one is supplied) polish it.
// Converges to |f(root)| < f_tol.
double solve_monotone(const std::function<double(double)>& f, double lo, double hi, double f_tol,
                      const std::function<double(double)>& df = nullptr);

// Expands hi geometrically from `start` until f(hi) >= target. Throws
// errc::bracket past `cap`.
double expand_upper(const std::function<double(double)>& f, double start, double target,
                    double cap = 1e18);

}  // namespace ssou
