#pragma once

#include <functional>
#include <vector>

namespace ssou {

struct QuadResult {
  double value = 0.0;
  double error = 0.0;  // estimated absolute error
  int evaluations = 0;
};

// Adaptive Gauss-Kronrod (7,15) on a finite interval. Stops when the local
// error estimates sum below max(abs_tol, rel_tol * |integral|).
QuadResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                              double abs_tol, double rel_tol, int max_intervals = 2000);

// Integral over [a, infinity) for integrands with (at least) exponential
// decay: panels [a + k, a + 2k, ...] are added until the last panel falls
// below the tolerance.
QuadResult integrate_to_infinity(const std::function<double(double)>& f, double a,
                                 double abs_tol, double rel_tol);

// Generalized Gauss-Laguerre rule for the weight r^exponent * exp(-r) on
// (0, infinity), exponent > -1. Nodes ascending; weights sum to
// Gamma(exponent + 1). Moment exactness is verified at construction.
struct GaussLaguerreRule {
  GaussLaguerreRule(int order, double exponent);

  double integrate(const std::function<double(double)>& f) const;

  int order;
  double exponent;
  std::vector<double> nodes;
  std::vector<double> weights;
};

}  // namespace ssou
