#include <doctest.h>

#include <cmath>
#include <complex>

#include "core/common.hpp"
#include "core/gammafn.hpp"
#include "core/levy_exponent.hpp"
#include "core/series.hpp"
#include "core/special_functions.hpp"

using namespace ssou;

namespace {
const double kNu = 0.25;
LevyExponent brownian_psi() { return LevyExponent::brownian(-kNu, 1.0); }
}  // namespace

TEST_CASE("coefficients") {
  SeriesEvaluator series(brownian_psi(), 2.0);
  CHECK(series.coeff(0) == 1.0);
  CHECK(series.coeff(1) == doctest::Approx(1.0 / 1.5).epsilon(1e-15));  // 1/psi(2)

  // direct product of 1/psi(alpha k) as the independent route
  double product = 1.0;
  auto psi = brownian_psi();
  for (int k = 1; k <= 7; ++k) product /= psi(2.0 * k);
  CHECK(series.coeff(7) == doctest::Approx(product).epsilon(1e-13));
}

TEST_CASE("pochhammer coefficients against the gamma-ratio closed form") {
  // a_n = alpha^n Gamma(alpha-1) / Gamma(alpha(n+1)-1); the direct product
  // of 1/psi(alpha k) telescopes to exactly this.
  double alpha = 1.5;
  SeriesEvaluator series(LevyExponent::pochhammer(alpha, 0.0), alpha);
  for (int n : {1, 3, 10, 25}) {
    double closed = std::exp(n * std::log(alpha) + std::lgamma(alpha - 1.0) -
                             std::lgamma(alpha * (n + 1.0) - 1.0));
    CHECK(series.coeff(n) == doctest::Approx(closed).epsilon(1e-12));
  }
}

TEST_CASE("eval basics") {
  SeriesEvaluator series(brownian_psi(), 2.0);
  CHECK(series.eval(0.0).value == 1.0);
  CHECK(series.eval_q(0.7, 0.0).value == 1.0);
  CHECK(series.eval_q(0.0, 3.0).value == 1.0);  // (0)_n kills every term
  auto v = series.eval(1.0);
  CHECK(v.tail_bound <= 1e-10 * std::abs(v.value));
  CHECK(v.terms_used < 40);
}

TEST_CASE("bessel identity at the test point") {
  SeriesEvaluator series(brownian_psi(), 2.0);
  double z = 1.0;
  double expected = std::pow(0.5 * z, 0.5 * kNu) * std::tgamma(1.0 - kNu) *
                    special::bessel_i(-kNu, std::sqrt(2.0 * z));
  CHECK(series.eval(z).value == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("kummer identity") {
  SeriesEvaluator series(brownian_psi(), 2.0);
  double q = 0.7, x = 1.0;
  CHECK(series.eval_q(q, x * x).value ==
        doctest::Approx(special::kummer_phi(q, 1.0 - kNu, 0.5 * x * x)).epsilon(1e-12));
}

TEST_CASE("pochhammer series against a high-precision partial sum") {
  double alpha = 1.5, z = 0.7;
  SeriesEvaluator series(LevyExponent::pochhammer(alpha, 0.0), alpha);
  // 200-term long-double sum of Gamma(alpha-1) (alpha z)^n / Gamma(alpha n + alpha - 1)
  long double acc = 0.0L;
  for (int n = 0; n < 200; ++n) {
    long double term = std::exp(static_cast<long double>(
        n * std::log(alpha * z) + std::lgamma(alpha - 1.0) - std::lgamma(alpha * n + alpha - 1.0)));
    acc += term;
  }
  CHECK(series.eval(z).value == doctest::Approx(static_cast<double>(acc)).epsilon(1e-12));
}

TEST_CASE("prabhakar-type identity") {
  double alpha = 1.5, q = 0.9, x = 0.5;
  SeriesEvaluator series(LevyExponent::pochhammer(alpha, 0.0), alpha);
  double rhs = std::tgamma(alpha - 1.0) * special::ml_q_series(alpha, alpha - 1.0, q, alpha * x);
  CHECK(series.eval_q(q, x).value == doctest::Approx(rhs).epsilon(1e-12));
}

TEST_CASE("complex argument") {
  SeriesEvaluator series(brownian_psi(), 2.0);
  std::complex<double> z{1.2, -0.7};
  auto v = series.eval_q(0.8, z);
  auto conj = series.eval_q(0.8, std::conj(z));
  CHECK(std::abs(v.value - std::conj(conj.value)) < 1e-13 * std::abs(v.value));
}

TEST_CASE("truncation and zero-denominator errors") {
  SeriesOptions tight;
  tight.max_terms = 8;
  SeriesEvaluator small(brownian_psi(), 2.0, tight);
  CHECK_THROWS_AS(small.eval(1e6), Error);

  // alpha = 0.5 walks the coefficient grid onto the root psi(1) = 0.
  SeriesEvaluator on_root(LevyExponent::pochhammer(1.5, 0.0), 0.5);
  CHECK_THROWS_WITH_AS(on_root.eval(1.0), doctest::Contains("psi(alpha k) = 0"), Error);
  CHECK_THROWS_AS(on_root.coeff(2), Error);
  CHECK(on_root.coeff(1) != 0.0);  // before the root everything is fine
}

TEST_CASE("c_theta closed forms") {
  double closed_brown = std::pow(2.0, -kNu) * std::tgamma(1.0 - kNu) / std::tgamma(1.0 + kNu);
  CHECK(c_theta(brownian_psi(), 2.0, 1.0, 0.5) ==
        doctest::Approx(closed_brown).epsilon(1e-8));
  double alpha = 1.5;
  CHECK(c_theta_auto(LevyExponent::pochhammer(alpha, 0.0), alpha) ==
        doctest::Approx(std::pow(alpha, 1.0 / alpha) / (alpha - 1.0)).epsilon(1e-6));
  CHECK_THROWS_AS(c_theta_auto(LevyExponent::brownian(0.25, 1.0), 2.0), Error);  // no root
}

TEST_CASE("zero passage function") {
  ZeroPassageFunction n(brownian_psi(), 2.0);
  CHECK(n.eval(0.7, 0.0) == 1.0);
  CHECK(n.eval(0.0, 2.0) == 1.0);
  // decreasing in x over the probe grid
  double prev = 2.0;
  for (double x : {0.5, 1.0, 2.0, 4.0}) {
    double v = n.eval(1.0, x * x);
    CHECK(v < prev);
    CHECK(v > 0.0);
    prev = v;
  }
  // matches the Tricomi composition at one calibration point
  double q = 1.0, x = 1.0;
  double rhs = std::exp(lgamma_diff(kNu, q)) * special::tricomi_u(q, 1.0 - kNu, 0.5 * x * x);
  CHECK(n.eval(q, x * x) == doctest::Approx(rhs).epsilon(1e-9));
  CHECK_THROWS_AS(ZeroPassageFunction(LevyExponent::brownian(0.25, 1.0), 2.0), Error);
}

TEST_CASE("transform factor matches the gamma moments") {
  // (q)_n = integral of r^n against the Gamma(q) weight, so the q-series is
  // the termwise transform of the plain series.
  SeriesEvaluator series(brownian_psi(), 2.0);
  double q = 1.3, z = 0.8;
  double direct = series.eval_q(q, z).value;
  double moments = 0.0;
  for (int n = 0; n < 60; ++n) {
    double a_n = series.coeff(n);
    if (a_n == 0.0) break;
    moments += a_n * std::exp(lgamma_ratio(q + n, q)) * std::pow(z, n);
  }
  CHECK(direct == doctest::Approx(moments).epsilon(1e-12));
}
