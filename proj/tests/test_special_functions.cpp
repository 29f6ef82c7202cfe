#include <doctest.h>

#include <cmath>

#include "core/common.hpp"
#include "core/special_functions.hpp"

using namespace ssou::special;

TEST_CASE("kummer basics") {
  CHECK(kummer_phi(0.7, 0.75, 0.0) == 1.0);
  // Phi(1, 1, x) = e^x
  CHECK(kummer_phi(1.0, 1.0, 2.5) == doctest::Approx(std::exp(2.5)).epsilon(1e-14));
  CHECK_THROWS_AS(kummer_phi(0.7, -2.0, 1.0), ssou::Error);
}

TEST_CASE("kummer contiguous relation") {
  // Phi(a,b,x) - Phi(a-1,b,x) = (x/b) Phi(a,b+1,x)
  for (double a : {0.8, 1.7, 3.1})
    for (double b : {0.6, 1.25})
      for (double x : {0.3, 2.0, 9.0}) {
        double lhs = kummer_phi(a, b, x) - kummer_phi(a - 1.0, b, x);
        double rhs = x / b * kummer_phi(a, b + 1.0, x);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
      }
}

TEST_CASE("bessel half-integer closed form") {
  // I_{1/2}(x) = sqrt(2/(pi x)) sinh(x)
  for (double x : {0.5, 1.0, 3.0}) {
    double expected = std::sqrt(2.0 / (M_PI * x)) * std::sinh(x);
    CHECK(bessel_i(0.5, x) == doctest::Approx(expected).epsilon(1e-13));
  }
  CHECK(bessel_i(0.0, 0.0) == 1.0);
  CHECK(bessel_i(1.5, 0.0) == 0.0);
  CHECK_THROWS_AS(bessel_i(-2.0, 1.0), ssou::Error);
}

TEST_CASE("bessel asymptotics") {
  double x = 40.0;
  double normalized = bessel_i(0.25, x) * std::sqrt(2.0 * M_PI * x) * std::exp(-x);
  CHECK(std::abs(normalized - 1.0) < 0.01);
}

TEST_CASE("prabhakar reductions") {
  // q = alpha = beta = 1 collapses to the exponential
  CHECK(prabhakar_ml(1.0, 1.0, 1.0, 0.7) == doctest::Approx(std::exp(0.7)).epsilon(1e-14));
  // q = 1 gives the two-parameter function: compare against partial sums
  double alpha = 1.5, beta = 1.2, z = 0.8;
  double direct = prabhakar_ml(alpha, beta, 1.0, z);
  double partial = 0.0;
  for (int n = 0; n < 80; ++n) partial += std::pow(z, n) / std::tgamma(alpha * n + beta);
  CHECK(direct == doctest::Approx(partial).epsilon(1e-12));
  CHECK_THROWS_AS(prabhakar_ml(-1.0, 1.0, 1.0, 0.5), ssou::Error);
}

TEST_CASE("factorial-free series differs by the factorial weight") {
  // at q = 1, (1)_n = n!: the factorial-free series has plain n! weights
  double alpha = 1.3, beta = 1.1, z = 0.4;
  double v = ml_q_series(alpha, beta, 1.0, z);
  double partial = 0.0;
  for (int n = 0; n < 120; ++n)
    partial += std::exp(std::lgamma(n + 1.0) - std::lgamma(alpha * n + beta)) * std::pow(z, n);
  CHECK(v == doctest::Approx(partial).epsilon(1e-12));
}

TEST_CASE("tricomi function") {
  // U(a,b,x) obeys x U'' + (b-x) U' - a U = 0; probe via finite differences.
  double a = 0.7, b = 0.75, x = 1.3, h = 1e-4;
  double u0 = tricomi_u(a, b, x);
  double up = tricomi_u(a, b, x + h);
  double um = tricomi_u(a, b, x - h);
  double d1 = (up - um) / (2.0 * h);
  double d2 = (up - 2.0 * u0 + um) / (h * h);
  CHECK(std::abs(x * d2 + (b - x) * d1 - a * u0) < 1e-5);
  CHECK_THROWS_AS(tricomi_u(0.7, 1.0, 1.0), ssou::Error);   // integer b
  CHECK_THROWS_AS(tricomi_u(0.7, 0.75, -1.0), ssou::Error);
}
