#include <doctest.h>

#include <cmath>

#include "core/common.hpp"
#include "core/gamma_transform.hpp"
#include "core/gammafn.hpp"
#include "core/levy_exponent.hpp"
#include "core/series.hpp"

using namespace ssou;

TEST_CASE("constant function integrates to the prefactor") {
  for (double q : {0.3, 1.0, 4.0})
    for (double chi : {0.5, 2.0}) {
      GammaTransform t(q, chi, 2.0);
      CHECK(t.apply([](double) { return 1.0; }, 3.0) ==
            doctest::Approx(std::pow(chi, q / chi)).epsilon(1e-12));
    }
}

TEST_CASE("power moments are exact") {
  double q = 0.9, chi = 2.0, alpha = 2.0;
  GammaTransform t(q, chi, alpha);
  double a = q / chi;
  // f(y) = y^alpha at x = 1: chi^(q/chi) * chi * (q/chi)
  CHECK(t.apply([&](double y) { return std::pow(y, alpha); }, 1.0) ==
        doctest::Approx(std::pow(chi, a) * chi * a).epsilon(1e-12));
  for (int k = 0; k <= 5; ++k) {
    double lhs = t.apply([&](double y) { return std::pow(y, alpha * k); }, 1.0);
    double rhs = std::pow(chi, a + k) * std::exp(lgamma_ratio(a + k, a));
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
  }
}

TEST_CASE("series route equals the quadrature route") {
  auto psi = LevyExponent::brownian(-0.25, 1.0);
  SeriesEvaluator series(psi, 2.0);
  double q = 0.7, chi = 2.0, x = 1.0;
  GammaTransform t(q, chi, 2.0);
  double lhs = t.apply([&](double y) { return series.eval(y * y).value; }, x);
  double rhs = std::pow(chi, q / chi) * series.eval_q(q / chi, chi * x * x).value;
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
}

TEST_CASE("time-space scaling") {
  auto psi = LevyExponent::brownian(-0.25, 1.0);
  SeriesEvaluator series(psi, 2.0);
  auto invariant = [&](double y) { return series.eval(y * y).value; };
  double q = 0.7, chi = 2.0, x = 1.1;
  GammaTransform t(q, chi, 2.0);
  CHECK(t.time_space_invariant(invariant, 0.0, x) == doctest::Approx(t.apply(invariant, x)));
  // constant f: the deterministic discount alone survives
  double tt = 0.8;
  CHECK(t.time_space_invariant([](double) { return 1.0; }, tt, x) ==
        doctest::Approx(std::pow(1.0 + chi * tt, -q / chi) * std::pow(chi, q / chi))
            .epsilon(1e-12));
  CHECK_THROWS_AS(t.time_space_invariant(invariant, -0.5, x), Error);
}

TEST_CASE("near-singular weight uses the adaptive rule") {
  GammaTransform t(0.05, 2.0, 2.0);  // q/chi = 0.025
  CHECK(t.using_adaptive());
  CHECK(t.apply([](double) { return 1.0; }, 1.0) ==
        doctest::Approx(std::pow(2.0, 0.025)).epsilon(1e-9));
  GammaTransform::Options forced;
  forced.force_adaptive = true;
  GammaTransform t2(0.9, 2.0, 2.0, forced);
  GammaTransform t3(0.9, 2.0, 2.0);
  auto f = [](double y) { return std::exp(-y * y); };
  CHECK(t2.apply(f, 0.7) == doctest::Approx(t3.apply(f, 0.7)).epsilon(1e-9));
}

TEST_CASE("non-finite integrand is reported") {
  GammaTransform t(0.9, 2.0, 2.0);
  CHECK_THROWS_WITH_AS(t.apply([](double) { return NAN; }, 1.0),
                       doctest::Contains("non-finite"), Error);
}

TEST_CASE("constructor guards") {
  CHECK_THROWS_AS(GammaTransform(0.0, 2.0, 2.0), Error);
  CHECK_THROWS_AS(GammaTransform(1.0, -1.0, 2.0), Error);
}

TEST_CASE("gauss-laguerre rule sanity") {
  GaussLaguerreRule rule(32, -0.3);
  double sum = 0.0;
  for (double w : rule.weights) sum += w;
  CHECK(sum == doctest::Approx(std::tgamma(0.7)).epsilon(1e-12));
  for (std::size_t i = 1; i < rule.nodes.size(); ++i) CHECK(rule.nodes[i] > rule.nodes[i - 1]);
  CHECK(rule.nodes.front() > 0.0);
  CHECK_THROWS_AS(GaussLaguerreRule(8, -1.5), Error);
}
