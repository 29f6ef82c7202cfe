#include <doctest.h>

#include <cmath>
#include <complex>

#include "core/common.hpp"
#include "core/stable_wh.hpp"

using namespace ssou;
using namespace ssou::stable;
using cd = std::complex<double>;

TEST_CASE("factor polynomials") {
  // single factor with exponent zero
  for (double x : {0.3, 1.0, 2.7}) CHECK(f_poly(0, x, {2.0, 1.0}) == cd{3.0, 1.0});
  // m = 1, x = 1/2: (z + i)(z - i) = z^2 + 1
  cd z{0.7, -0.4};
  CHECK(std::abs(f_poly(1, 0.5, z) - (z * z + 1.0)) < 1e-14);
  // conjugate symmetry for real x
  for (int m : {1, 2, 4}) {
    cd w{1.3, 0.8};
    CHECK(std::abs(f_poly(m, 0.37, std::conj(w)) - std::conj(f_poly(m, 0.37, w))) < 1e-12);
  }
  CHECK_THROWS_AS(f_poly(-1, 0.5, z), Error);
}

TEST_CASE("zolotarev positivity parameter") {
  CHECK(StableParams(1.5, 0.0).rho == doctest::Approx(0.5).epsilon(1e-15));
  // class membership: rho + k = l / alpha
  StableParams p(4.0 / 3.0, 0.0, 1, 2);
  CHECK(p.rho + p.k == doctest::Approx(p.l / p.alpha).epsilon(1e-12));
  CHECK_THROWS_AS(StableParams(1.5, 0.0, 0, 1), Error);  // 1/2 != 2/3
  CHECK_THROWS_AS(StableParams(2.5, 0.0), Error);
  auto asym = StableParams::from_class(1.5, 1, 2);
  CHECK(asym.rho == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("branch rule") {
  CHECK(std::abs(pow_branch({-1.0, 0.0}, 0.5) - cd{0.0, 1.0}) < 1e-15);   // arg = +pi
  CHECK(std::abs(pow_branch({-1.0, -0.0}, 0.5) - cd{0.0, 1.0}) < 1e-15);  // pinned to +pi
  CHECK(pow_branch({0.0, 0.0}, 1.5) == cd{0.0, 0.0});
}

TEST_CASE("excluded rays") {
  StableParams p(4.0 / 3.0, 0.0, 1, 2);
  CHECK_THROWS_WITH_AS(psi_plus(p, {1.0, 0.0}), doctest::Contains("excluded"), Error);
  CHECK_THROWS_AS(psi_plus(p, {0.0, 0.0}), Error);
  CHECK_THROWS_WITH_AS(psi_minus(p, {-1.0, -0.0}), doctest::Contains("excluded"), Error);
  CHECK_NOTHROW(psi_minus(p, {-1.0, 0.0}));  // approached from above: allowed
  CHECK_NOTHROW(psi_plus(p, {-1.0, 0.0}));
}

TEST_CASE("factorization identity on a fixed grid") {
  StableParams p(1.6, 0.0, 2, 4);
  const cd points[] = {{0.5, 0.8}, {-1.2, 0.4}, {2.0, -1.0}, {-0.3, -2.1}, {1.5, 1.5}};
  for (cd z : points) {
    cd residual = psi_minus(p, z) * psi_plus(p, z) * (1.0 - char_exponent(p, z)) - 1.0;
    CHECK(std::abs(residual) < 1e-12);
  }
}

TEST_CASE("tail exponent of the positive factor") {
  StableParams p(4.0 / 3.0, 0.0, 1, 2);
  double x1 = 1e3, x2 = 1e4;
  double h1 = std::abs(psi_plus(p, {-std::pow(x1, 1.0 / p.alpha), 0.0}));
  double h2 = std::abs(psi_plus(p, {-std::pow(x2, 1.0 / p.alpha), 0.0}));
  double slope = (std::log(h2) - std::log(h1)) / (std::log(x2) - std::log(x1));
  CHECK(std::abs(slope + p.rho) < 0.02 * p.rho);
}

TEST_CASE("double laplace transform") {
  StableParams p(4.0 / 3.0, 0.0, 1, 2);
  double below = ou_fpt_double_laplace(p, PassageSide::below, 1.0, 2.0, 0.5, 2.0);
  double above = ou_fpt_double_laplace(p, PassageSide::above, 1.0, 2.0, 0.5, 2.0);
  CHECK(below == doctest::Approx(above).epsilon(1e-9));  // symmetric process
  CHECK(below > 0.0);
  // p = 0 is allowed (the denominator factor drops to 1)
  CHECK_NOTHROW(ou_fpt_double_laplace(p, PassageSide::below, 1.0, 2.0, 0.0, 2.0));
  CHECK_THROWS_AS(ou_fpt_double_laplace(p, PassageSide::below, 1.0, 0.5, 0.5, 2.0), Error);
  CHECK_THROWS_AS(ou_fpt_double_laplace(StableParams(1.5, 0.3), PassageSide::below, 1.0, 2.0,
                                        0.5, 2.0),
                  Error);  // no class label
}
