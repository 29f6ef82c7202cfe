#pragma once

// Gamma-function helpers shared by the exponent family, the power series and
// the reference special functions: log-gamma ratios with sign tracking,
// real-order Pochhammer symbols (z)_a = Gamma(z+a)/Gamma(z), and digamma.

namespace ssou {

// Gamma(num)/Gamma(den) for num > 0, den arbitrary non-pole. Returns 0 when
// den sits on a pole of Gamma (nonpositive integer).
double gamma_ratio(double num, double den);

// log Gamma(num) - log Gamma(den), both arguments > 0.
double lgamma_ratio(double num, double den);

// log Gamma(x + delta) - log Gamma(x) for x, x+delta > 0. For large x the
// direct difference loses ~x/eps absolute accuracy; this form stays at
// ~1e-15 of the result by expanding Stirling's series around x.
double lgamma_diff(double x, double delta);

// (z)_a = Gamma(z+a)/Gamma(z) for real order a with z+a > 0.
// Evaluates to 0 when z is a nonpositive integer.
double pochhammer_real(double z, double a);

// log (q)_n and the integer-order Pochhammer (q)_n = Gamma(q+n)/Gamma(q), q > 0.
double log_pochhammer(double q, int n);

// Digamma (logarithmic derivative of Gamma) for non-pole real x.
double digamma(double x);

}  // namespace ssou
