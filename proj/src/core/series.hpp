#pragma once

#include <complex>
#include <vector>

#include "core/levy_exponent.hpp"

namespace ssou {

struct SeriesOptions {
  double rtol = 1e-10;
  int max_terms = 400;
};

struct SeriesValue {
  double value = 0.0;
  int terms_used = 0;
  double tail_bound = 0.0;
};

struct ComplexSeriesValue {
  std::complex<double> value{0.0, 0.0};
  int terms_used = 0;
  double tail_bound = 0.0;
};

// Entire-function family attached to a Laplace exponent psi and index alpha:
//
//   I(z)    = sum_n a_n z^n,          a_0 = 1,  a_n = a_{n-1} / psi(alpha n)
//   I(q; z) = sum_n a_n (q)_n z^n,    (q)_n the Pochhammer symbol
//
// One evaluator owns the cached values psi(alpha k), k = 1..max_terms
// (computed eagerly, immutable afterwards, so concurrent evaluation is safe)
// and the coefficient table in log space: psi(alpha k) grows like k^(1+beta),
// so a_n underflows doubles near n ~ 100. Evaluation itself runs on the term
// recursion t_n = t_{n-1} (q+n-1) z / psi(alpha n), which never materializes
// a_n alone.
class SeriesEvaluator {
public:
  SeriesEvaluator(LevyExponent psi, double alpha, SeriesOptions options = {});

  double coeff(int n) const;  // a_n; underflows to 0 for large n
  double log_abs_coeff(int n) const;
  int coeff_sign(int n) const;

  SeriesValue eval(double z) const;
  SeriesValue eval_q(double q, double z) const;
  ComplexSeriesValue eval(std::complex<double> z) const;
  ComplexSeriesValue eval_q(double q, std::complex<double> z) const;

  const LevyExponent& exponent() const { return psi_; }
  double alpha() const { return alpha_; }
  const SeriesOptions& options() const { return options_; }

private:
  ComplexSeriesValue sum_terms(bool with_q, double q, std::complex<double> z) const;

  LevyExponent psi_;
  double alpha_;
  SeriesOptions options_;
  std::vector<double> psi_at_k_;     // psi(alpha k), k = 1..max_terms
  std::vector<double> log_abs_a_;    // log |a_n|, n = 0..max_terms
  std::vector<int> sign_a_;
  int zero_denominator_at_ = -1;     // first k with psi(alpha k) == 0, if any
};

// Normalizing constant of the ratio asymptotics
//   I_{alpha,psi}(x^alpha) ~ C x^theta I_{alpha,psi_theta}(x^alpha),
// for exponents with negative mean, Cramer root theta and tail growth
// psi(u) ~ a_beta u^(1+beta). Evaluated as
//
//   C = a_beta^(-ta) alpha^(-(1+beta) ta) e^(EulerGamma beta ta) / Gamma(1+ta)
//       * prod_k e^(-beta ta / k) (k psi(alpha k + theta)) / ((k+ta) psi(alpha k))
//
// with ta = theta/alpha; the product terms are 1 + O(1/k^2) and the truncated
// tail is removed by a Richardson-type estimate.
double c_theta(const LevyExponent& psi, double alpha, double beta, double a_beta);

// Same, with the growth profile taken from the exponent kind.
double c_theta_auto(const LevyExponent& psi, double alpha);

// The difference function
//   N(q; y) = I(q; y) - C y^ta (Gamma(q+ta)/Gamma(q)) I_theta(q + ta; y)
// evaluated against the series argument y (= x^alpha in the space variable).
// Holds its own evaluators and the constant C, so grids reuse one instance.
class ZeroPassageFunction {
public:
  ZeroPassageFunction(LevyExponent psi, double alpha, SeriesOptions options = {});

  double eval(double q, double y) const;
  // Magnitude of the two constituent terms; the difference cancels
  // catastrophically for large y, so residual checks scale against this.
  double term_scale(double q, double y) const;

  double theta() const { return theta_; }
  double c() const { return c_theta_; }

private:
  double theta_;
  double tau_;  // theta / alpha
  double c_theta_;
  SeriesEvaluator base_;
  SeriesEvaluator shifted_;
};

// One-shot convenience; theta is checked against the exponent's Cramer root.
double eval_n(const LevyExponent& psi, double alpha, double theta, double q, double x,
              SeriesOptions options = {});

}  // namespace ssou
