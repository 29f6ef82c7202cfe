#include <doctest.h>

#include <cmath>

#include "core/common.hpp"
#include "core/gammafn.hpp"
#include "core/levy_exponent.hpp"

using namespace ssou;

TEST_CASE("brownian exponent closed form") {
  double nu = 0.25;
  auto psi = LevyExponent::brownian(-nu, 1.0);
  CHECK(psi(0.0) == 0.0);
  CHECK(psi(2.0) == doctest::Approx(1.5).epsilon(1e-15));  // 2 - 2 nu
  CHECK(psi.mean() == -nu);
  CHECK(psi.derivative(1.0) == doctest::Approx(1.0 - nu));
}

TEST_CASE("pochhammer exponent values") {
  auto psi = LevyExponent::pochhammer(1.5, 0.0);
  CHECK(psi(0.0) == 0.0);
  // (1/alpha) (u-1)_alpha at u = 1.5: Gamma(2)/Gamma(0.5) / 1.5
  double expected = (1.0 / 1.5) * std::tgamma(2.0) / std::tgamma(0.5);
  CHECK(psi(1.5) == doctest::Approx(expected).epsilon(1e-13));
  CHECK(psi(1.0) == 0.0);  // the Cramer root
  // psi'(1) = Gamma(alpha)/alpha
  CHECK(psi.derivative(1.0) == doctest::Approx(std::tgamma(1.5) / 1.5).epsilon(1e-10));
}

TEST_CASE("cramer roots") {
  CHECK(*LevyExponent::brownian(-0.25, 1.0).cramer_theta() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(*LevyExponent::pochhammer(1.5, 0.0).cramer_theta() ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(!LevyExponent::brownian(1.0, 1.0).cramer_theta());
  CHECK(LevyExponent::brownian(1.0, 1.0).theta0() == 0.0);
}

TEST_CASE("phi inverse") {
  auto std_bm = LevyExponent::brownian(0.0, 1.0);
  CHECK(std_bm.phi(2.0) == doctest::Approx(2.0).epsilon(1e-13));  // psi(u) = u^2/2
  CHECK(std_bm.phi(0.0) == 0.0);
  auto poch = LevyExponent::pochhammer(1.5, 0.0);
  CHECK(poch.phi(0.0) == doctest::Approx(*poch.cramer_theta()).epsilon(1e-12));
  // monotone in q
  double prev = 0.0;
  for (double q : {0.1, 0.5, 2.0, 7.0}) {
    double v = poch.phi(q);
    CHECK(v > prev);
    prev = v;
  }
}

TEST_CASE("pure drift fixture") {
  auto drift = LevyExponent::brownian(2.0, 0.0);
  CHECK(drift(3.0) == 6.0);
  CHECK(drift.phi(4.0) == doctest::Approx(2.0).epsilon(1e-13));
  // flat exponent cannot bracket an inverse
  auto flat = LevyExponent::brownian(0.0, 0.0);
  CHECK_THROWS_WITH_AS(flat.phi(1.0), doctest::Contains("no sign change"), Error);
}

TEST_CASE("domain errors") {
  auto psi = LevyExponent::brownian(-0.25, 1.0);
  CHECK_THROWS_AS(psi(-1.0), Error);
  CHECK_THROWS_AS(LevyExponent::pochhammer(2.5, 0.0), Error);
  CHECK_THROWS_AS(LevyExponent::pochhammer(1.5, -0.6), Error);
  CHECK_THROWS_AS(psi.esscher(-1.0), Error);
}

TEST_CASE("esscher shift closed forms and wrapper") {
  auto brown = LevyExponent::brownian(-0.25, 1.0);
  auto tilted = brown.esscher(0.5);
  CHECK(tilted.kind() == ExponentKind::brownian_drift);
  for (double u : {0.0, 0.3, 1.0, 4.0})
    CHECK(tilted(u) == doctest::Approx(brown(u + 0.5) - brown(0.5)).epsilon(1e-14));

  auto poch = LevyExponent::pochhammer(1.5, 0.2);
  auto poch_tilted = poch.esscher(0.7);
  CHECK(poch_tilted.kind() == ExponentKind::pochhammer);
  for (double u : {0.0, 0.5, 2.0})
    CHECK(poch_tilted(u) == doctest::Approx(poch(u + 0.7) - poch(0.7)).epsilon(1e-12));
  CHECK(poch_tilted(0.0) == 0.0);
}

TEST_CASE("tabulated triplet reproduces the pochhammer exponent") {
  double alpha = 1.5;
  auto poch = LevyExponent::pochhammer(alpha, 0.0);
  double c = (alpha - 1.0) / std::tgamma(2.0 - alpha);
  auto density = [=](double y) {
    double w = -y;
    return c * std::exp(-(alpha - 1.0) * w) / std::pow(-std::expm1(-w), alpha + 1.0);
  };
  auto tab = LevyExponent::tabulated(poch.mean(), 0.0, density);
  for (double u : {0.5, 1.0, 2.0})
    CHECK(tab(u) == doctest::Approx(poch(u)).epsilon(1e-8));
  CHECK(*tab.cramer_theta() == doctest::Approx(1.0).epsilon(1e-7));

  auto wrapped = tab.esscher(0.5);  // generic wrapper kind
  CHECK(wrapped.kind() == ExponentKind::esscher);
  CHECK(wrapped(1.0) == doctest::Approx(tab(1.5) - tab(0.5)).epsilon(1e-11));
}

TEST_CASE("json descriptors") {
  auto brown = LevyExponent::from_json(R"({"kind":"brownian","b":-0.25,"sigma":1.0})");
  CHECK(brown(2.0) == doctest::Approx(1.5));
  auto poch = LevyExponent::from_json(R"({"kind":"pochhammer","alpha":1.5,"gamma":0.0})");
  CHECK(*poch.cramer_theta() == doctest::Approx(1.0));
  auto tilted = LevyExponent::from_json(
      R"({"kind":"esscher","gamma":0.5,"base":{"kind":"brownian","b":-0.25,"sigma":1.0}})");
  CHECK(tilted(1.0) == doctest::Approx(brown(1.5) - brown(0.5)));
  CHECK_THROWS_AS(LevyExponent::from_json("{"), Error);
  CHECK_THROWS_AS(LevyExponent::from_json(R"({"kind":"zeta"})"), Error);
  CHECK_THROWS_AS(LevyExponent::from_json(R"({"kind":"brownian","b":0.0})"), Error);
}

TEST_CASE("pochhammer mean against the digamma expression") {
  // b_gamma = (1/alpha)(g-1)_alpha (digamma(g-1+alpha) - digamma(g-1)),
  // with the pole limits at g = 0 and g = 1.
  double alpha = 1.5;
  for (double g : {0.5, 1.2, 1.7}) {
    auto psi = LevyExponent::pochhammer(alpha, g);
    double z = g - 1.0;
    double analytic = pochhammer_real(z, alpha) * (digamma(z + alpha) - digamma(z)) / alpha;
    CHECK(psi.mean() == doctest::Approx(analytic).epsilon(1e-10));
  }
  CHECK(LevyExponent::pochhammer(alpha, 0.0).mean() ==
        doctest::Approx(-std::tgamma(alpha - 1.0) / alpha).epsilon(1e-12));
  CHECK(LevyExponent::pochhammer(alpha, 1.0).mean() ==
        doctest::Approx(std::tgamma(alpha) / alpha).epsilon(1e-12));
}

TEST_CASE("growth profiles") {
  auto g1 = LevyExponent::brownian(-0.25, 1.0).growth();
  REQUIRE(g1.has_value());
  CHECK(g1->beta == 1.0);
  CHECK(g1->a_beta == 0.5);
  auto g2 = LevyExponent::pochhammer(1.5, 0.0).growth();
  REQUIRE(g2.has_value());
  CHECK(g2->beta == doctest::Approx(0.5));
  CHECK(g2->a_beta == doctest::Approx(1.0 / 1.5));
  // the shift leaves the tail growth alone
  auto g3 = LevyExponent::pochhammer(1.5, 0.0).esscher(1.0).growth();
  REQUIRE(g3.has_value());
  CHECK(g3->beta == doctest::Approx(0.5));
}
