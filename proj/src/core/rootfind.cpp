#include "core/rootfind.hpp"

#include <cmath>

#include "core/common.hpp"

namespace ssou {

double expand_upper(const std::function<double(double)>& f, double start, double target,
                    double cap) {
  double hi = start;
  for (int i = 0; i < 200; ++i) {
    if (f(hi) >= target) return hi;
    hi *= 2.0;
    if (hi > cap) break;
  }
  raise(errc::bracket, "expand_upper: no sign change found below cap");
}

double solve_monotone(const std::function<double(double)>& f, double lo, double hi, double f_tol,
                      const std::function<double(double)>& df) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo > 0.0 || fhi < 0.0) raise(errc::bracket, "solve_monotone: endpoints do not bracket");
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;

  double x = 0.5 * (lo + hi);
  for (int iter = 0; iter < 200; ++iter) {
    double fx = f(x);
    if (std::abs(fx) < f_tol) return x;
    if (fx > 0.0)
      hi = x;
    else
      lo = x;

    double deriv;
    if (df) {
      deriv = df(x);
    } else {
      double h = 1e-6 * std::max(1.0, std::abs(x));
      deriv = (f(x + h) - f(x - h)) / (2.0 * h);
    }
    double next = (deriv > 0.0) ? x - fx / deriv : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == x) next = 0.5 * (lo + hi);
    x = next;
    if (hi - lo < 1e-16 * std::max(1.0, std::abs(x))) return x;
  }
  return x;
}

}  // namespace ssou
