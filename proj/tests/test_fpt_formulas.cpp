#include <doctest.h>

#include <cmath>

#include "core/common.hpp"
#include "core/fpt_formulas.hpp"
#include "core/gamma_transform.hpp"
#include "core/special_functions.hpp"

using namespace ssou;
using fpt::Process;
using fpt::Query;

namespace {
LevyExponent killed() { return LevyExponent::brownian(-0.25, 1.0); }
LevyExponent drifting() { return LevyExponent::brownian(0.25, 1.0); }
}  // namespace

TEST_CASE("boundary cases") {
  CHECK(fpt::laplace({Process::u_upward, killed(), 2.0, 1.0, 0.7, 1.0, 1.0}) == 1.0);
  CHECK(fpt::laplace({Process::u_upward, drifting(), 2.0, 1.0, 0.0, 0.5, 1.0}) == 1.0);
  // approaches 1 from below like x^theta as the start point goes to 0
  double near_zero = fpt::laplace({Process::u_to_zero, killed(), 2.0, 1.0, 0.7, 1e-9, 0.0});
  CHECK(near_zero < 1.0);
  CHECK(near_zero > 1.0 - 1e-4);
}

TEST_CASE("upward passage equals the kummer ratio") {
  double nu = 0.25, q = 0.7, lambda = 1.0, chi = 2.0, x = 0.5, a = 1.0;
  double v = fpt::laplace({Process::u_upward, killed(), 2.0, lambda, q, x, a});
  double expect = special::kummer_phi(q / chi, 1.0 - nu, chi * x * x / 2.0) /
                  special::kummer_phi(q / chi, 1.0 - nu, chi * a * a / 2.0);
  CHECK(v == doctest::Approx(expect).epsilon(1e-12));
  // the moving-boundary transform shares the expression
  CHECK(fpt::laplace({Process::x_moving_boundary, killed(), 2.0, lambda, q, x, a}) ==
        doctest::Approx(v));
}

TEST_CASE("delta clock composes the tilted passage with the power transfer") {
  double q = 0.7, x = 0.5, a = 1.0, lambda = 1.0, chi = 2.0;
  auto psi = killed();
  double gamma = psi.phi(q);
  double v = fpt::laplace({Process::u_delta_clock, psi, 2.0, lambda, q, x, a});
  // tilted exponent psi_gamma has drift gamma - nu; its passage ratio is a
  // kummer ratio with parameter 1 - (nu - gamma)
  double nu_tilted = 0.25 - gamma;
  double ratio = special::kummer_phi(gamma / 2.0, 1.0 - nu_tilted, chi * x * x / 2.0) /
                 special::kummer_phi(gamma / 2.0, 1.0 - nu_tilted, chi * a * a / 2.0);
  CHECK(v == doctest::Approx(std::pow(x / a, gamma) * ratio).epsilon(1e-11));
  CHECK(v < 1.0);
}

TEST_CASE("z and yhat formulas") {
  auto psi = drifting();
  double q = 0.6, lambda = 0.5;
  double vz = fpt::laplace({Process::z_upward, psi, 2.0, lambda, q, 0.8, 1.6});
  CHECK(vz > 0.0);
  CHECK(vz < 1.0);
  CHECK(fpt::laplace({Process::z_upward, psi, 2.0, lambda, q, 0.8, 0.8}) == 1.0);
  double vy = fpt::laplace({Process::yhat_downward, psi, 2.0, lambda, q, 1.5, 0.9});
  CHECK(vy > 0.0);
  CHECK(vy < 1.0);
  CHECK(fpt::laplace({Process::yhat_downward, psi, 2.0, lambda, q, 1.5, 1.5}) == 1.0);
  // q = 0 with positive mean: passage is almost sure
  CHECK(fpt::laplace({Process::z_upward, psi, 2.0, lambda, 0.0, 0.8, 1.6}) == 1.0);
}

TEST_CASE("meaningless queries raise") {
  CHECK_THROWS_AS(fpt::laplace({Process::u_upward, killed(), 2.0, 1.0, 0.7, 2.0, 1.0}), Error);
  CHECK_THROWS_AS(fpt::laplace({Process::z_upward, killed(), 2.0, 1.0, 0.7, 0.8, 1.6}), Error);
  CHECK_THROWS_AS(fpt::laplace({Process::u_to_zero, drifting(), 2.0, 1.0, 0.7, 1.0, 0.0}), Error);
  CHECK_THROWS_AS(fpt::laplace({Process::yhat_downward, drifting(), 2.0, 1.0, 0.7, 0.9, 1.5}),
                  Error);
  CHECK_THROWS_AS(fpt::laplace({Process::u_upward, killed(), 2.0, -1.0, 0.7, 0.5, 1.0}), Error);
}

TEST_CASE("harmonic transfer multiplies by the power") {
  auto psi = killed();
  double q = 0.7;
  double gamma = psi.phi(q);
  auto transferred = fpt::harmonic_transfer(psi, [](double) { return 1.0; }, q);
  for (double x : {0.5, 1.0, 2.0})
    CHECK(transferred(x) == doctest::Approx(std::pow(x, gamma)).epsilon(1e-14));
}

TEST_CASE("transform route agreement") {
  auto psi = drifting();
  double q = 0.7, x = 0.5, a = 1.0, chi = 2.0;
  double formula = fpt::laplace({Process::u_upward, psi, 2.0, 1.0, q, x, a});
  SeriesEvaluator s(psi, 2.0);
  GammaTransform t(q, chi, 2.0);
  auto invariant = [&](double y) { return s.eval(y * y).value; };
  CHECK(formula ==
        doctest::Approx(t.apply(invariant, x) / t.apply(invariant, a)).epsilon(1e-9));
}

TEST_CASE("monotone in the transform parameters") {
  auto psi = drifting();
  double prev = 2.0;
  for (double q : {0.0, 0.4, 1.0, 3.0}) {
    double v = fpt::laplace({Process::u_upward, psi, 2.0, 1.0, q, 0.5, 1.0});
    CHECK(v <= prev + 1e-14);
    prev = v;
  }
}
