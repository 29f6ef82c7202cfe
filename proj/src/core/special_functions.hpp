#pragma once

// Reference implementations of the classical special functions used to
// cross-check the series engine. Plain series summation throughout: these
// are oracles for bounded test ranges (|x| <= ~50), so clarity wins over
// large-argument asymptotics.

namespace ssou {
namespace special {

// Modified Bessel function I_nu(x) = sum (x/2)^(nu+2n) / (n! Gamma(nu+n+1)),
// nu > -1 and not a negative integer.
double bessel_i(double nu, double x);

// Confluent hypergeometric function of the first kind
// Phi(a, b, x) = sum (a)_n / ((b)_n n!) x^n, b not a nonpositive integer.
double kummer_phi(double a, double b, double x);

// Confluent hypergeometric function of the second kind, built from the
// standard two-Kummer connection formula; b must not be an integer.
double tricomi_u(double a, double b, double x);

// Prabhakar's three-parameter Mittag-Leffler function
// E^q_{alpha,beta}(z) = sum (q)_n z^n / (n! Gamma(alpha n + beta)).
double prabhakar_ml(double alpha, double beta, double q, double z);

// Pochhammer-weighted two-parameter Mittag-Leffler series
// sum (q)_n z^n / Gamma(alpha n + beta)  (no factorial). This is the
// normalization in which the power-series family of pochhammer exponents
// collapses to a Mittag-Leffler form.
double ml_q_series(double alpha, double beta, double q, double z);

}  // namespace special
}  // namespace ssou
