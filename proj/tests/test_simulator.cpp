#include <doctest.h>

#include <cmath>
#include <vector>

#include "core/common.hpp"
#include "core/fpt_formulas.hpp"
#include "core/levy_exponent.hpp"
#include "core/simulator.hpp"

using namespace ssou;
using sim::PathConfig;

// Unit-level Monte Carlo checks run with small path counts and |z| < 4;
// the full-size runs live in the validation suites.

namespace {
PathConfig quick_config() {
  PathConfig cfg;
  cfg.alpha = 2.0;
  cfg.lambda = 1.0;
  cfg.dt = 2e-3;
  cfg.horizon = 60.0;
  cfg.seed = 12345;
  return cfg;
}
}  // namespace

TEST_CASE("standard brownian terminal mean") {
  auto psi = LevyExponent::brownian(0.0, 1.0);
  auto r = sim::estimate_levy_mean(psi, quick_config(), 1.0, 20000);
  CHECK(std::abs(r.estimate) < 4.0 * r.std_error);
  CHECK(r.std_error == doctest::Approx(1.0 / std::sqrt(20000.0)).epsilon(0.05));
}

TEST_CASE("exponential moments match the exponent") {
  auto psi = LevyExponent::brownian(-0.25, 1.0);
  PathConfig cfg = quick_config();
  cfg.horizon = 2.0;
  for (double u : {0.5, 1.0}) {
    auto r = sim::estimate_exp_moment(psi, cfg, u, 1.0, 20000);
    CHECK(std::abs(r.estimate - std::exp(psi(u))) < 4.0 * r.std_error);
  }
}

TEST_CASE("pochhammer sampler matches its exponent") {
  auto psi = LevyExponent::pochhammer(1.5, 0.0);
  PathConfig cfg = quick_config();
  cfg.alpha = 1.5;
  cfg.horizon = 2.0;
  cfg.jump_cutoff = 0.02;
  auto mean = sim::estimate_levy_mean(psi, cfg, 1.0, 15000);
  CHECK(std::abs(mean.estimate - psi.mean()) < 4.0 * mean.std_error);
  auto moment = sim::estimate_exp_moment(psi, cfg, 1.0, 1.0, 15000);
  CHECK(std::abs(moment.estimate - 1.0) < 4.0 * moment.std_error);  // psi(1) = 0
}

TEST_CASE("upward passage against the closed form") {
  auto psi = LevyExponent::brownian(0.25, 1.0);
  double q = 0.7, x = 0.5, a = 1.0;
  double formula = fpt::laplace({fpt::Process::u_upward, psi, 2.0, 1.0, q, x, a});
  PathConfig cfg = quick_config();
  cfg.horizon = 100.0;
  auto ru = sim::estimate_fpt_laplace(psi, cfg, fpt::Process::u_upward, x, a, q, 8000);
  CHECK(std::abs(ru.estimate - formula) < 4.0 * ru.std_error);
  auto rx = sim::estimate_fpt_laplace(psi, cfg, fpt::Process::x_moving_boundary, x, a, q, 8000);
  CHECK(std::abs(rx.estimate - formula) < 4.0 * rx.std_error);
  CHECK(ru.n_hits > 7000);
}

TEST_CASE("passage from the boundary is instant") {
  auto psi = LevyExponent::brownian(0.25, 1.0);
  PathConfig cfg = quick_config();
  cfg.horizon = 5.0;
  auto r = sim::estimate_fpt_laplace(psi, cfg, fpt::Process::u_upward, 1.0, 1.0, 3.0, 2000);
  CHECK(r.estimate == 1.0);
  CHECK(r.std_error == 0.0);
}

TEST_CASE("q = 0 with certain passage gives 1") {
  auto psi = LevyExponent::brownian(0.25, 1.0);
  PathConfig cfg = quick_config();
  cfg.horizon = 120.0;
  auto r = sim::estimate_fpt_laplace(psi, cfg, fpt::Process::u_upward, 0.8, 1.0, 0.0, 2000);
  CHECK(r.estimate > 0.999);  // horizon truncation can only lose a whisker
}

TEST_CASE("insufficient hits raises") {
  auto psi = LevyExponent::brownian(0.25, 1.0);
  PathConfig cfg = quick_config();
  cfg.horizon = 0.5;
  CHECK_THROWS_AS(
      sim::estimate_fpt_laplace(psi, cfg, fpt::Process::u_upward, 0.5, 80.0, 0.7, 1000), Error);
  CHECK_THROWS_AS(
      sim::estimate_fpt_laplace(psi, cfg, fpt::Process::u_upward, 0.5, 1.0, 0.7, 10), Error);
}

TEST_CASE("unsupported driver kinds are rejected") {
  auto tab = LevyExponent::tabulated(0.1, 1.0, [](double) { return 0.0; });
  CHECK_THROWS_AS(sim::estimate_levy_mean(tab, quick_config(), 1.0, 2000), Error);
}

TEST_CASE("killed paths contribute zero through the indicator") {
  auto psi = LevyExponent::brownian(-0.25, 1.0);
  double q = 0.7, x = 0.5, a = 1.0;
  double formula = fpt::laplace({fpt::Process::u_delta_clock, psi, 2.0, 1.0, q, x, a});
  PathConfig cfg = quick_config();
  cfg.dt = 1e-3;
  cfg.horizon = 40.0;
  auto r = sim::estimate_fpt_laplace(psi, cfg, fpt::Process::u_delta_clock, x, a, q, 8000);
  CHECK(r.n_hits < r.n_paths);  // some paths die first
  CHECK(std::abs(r.estimate - formula) < 4.0 * r.std_error);
}

TEST_CASE("passage to zero against the difference function") {
  auto psi = LevyExponent::pochhammer(1.5, 0.0);
  double q = 0.5, x = 1.0;
  double formula = fpt::laplace({fpt::Process::u_to_zero, psi, 1.5, 1.0, q, x, 0.0});
  PathConfig cfg;
  cfg.alpha = 1.5;
  cfg.lambda = 1.0;
  cfg.dt = 4e-3;
  cfg.horizon = 120.0;
  cfg.seed = 99;
  cfg.jump_cutoff = 0.02;
  auto r = sim::estimate_fpt_laplace(psi, cfg, fpt::Process::u_to_zero, x, 0.0, q, 5000);
  CHECK(std::abs(r.estimate - formula) < 4.0 * r.std_error);
  CHECK(r.n_hits == r.n_paths);  // every path is eventually absorbed
}

TEST_CASE("sample sink receives rows in path order") {
  auto psi = LevyExponent::brownian(0.25, 1.0);
  PathConfig cfg = quick_config();
  cfg.horizon = 30.0;
  std::vector<long> indices;
  std::vector<sim::FptSample> samples;
  sim::estimate_fpt_laplace(psi, cfg, fpt::Process::u_upward, 0.5, 1.0, 0.7, 2000,
                            [&](long i, const sim::FptSample& s) {
                              indices.push_back(i);
                              samples.push_back(s);
                            });
  REQUIRE(indices.size() == 2000);
  for (long i = 0; i < 2000; ++i) CHECK(indices[static_cast<std::size_t>(i)] == i);
  for (const auto& s : samples) {
    CHECK(s.overshoot == 0.0);
    if (!s.killed) CHECK(s.hit_time >= 0.0);
  }
}

TEST_CASE("seed determinism is bit exact") {
  auto psi = LevyExponent::brownian(0.25, 1.0);
  PathConfig cfg = quick_config();
  cfg.horizon = 30.0;
  auto a = sim::estimate_fpt_laplace(psi, cfg, fpt::Process::u_upward, 0.5, 1.0, 0.7, 3000);
  auto b = sim::estimate_fpt_laplace(psi, cfg, fpt::Process::u_upward, 0.5, 1.0, 0.7, 3000);
  CHECK(a.estimate == b.estimate);
  CHECK(a.std_error == b.std_error);
  cfg.seed += 1;
  auto c = sim::estimate_fpt_laplace(psi, cfg, fpt::Process::u_upward, 0.5, 1.0, 0.7, 3000);
  CHECK(a.estimate != c.estimate);
}

TEST_CASE("exponential-functional paths") {
  auto psi = LevyExponent::brownian(0.1, 1.0);
  PathConfig cfg = quick_config();
  cfg.dt = 1e-3;
  cfg.horizon = 2.0;
  // beta = 0 kills the integral term: Y_t = x0 e^(alpha xi_t) exactly, so
  // Y = x0^2 Z pointwise on the same driving path.
  auto y = sim::levy_ou_path(psi, cfg, 1.5, 0.0);
  auto z = sim::z_path(psi, cfg, 1.5, 0.0);
  REQUIRE(y.size() == z.size());
  CHECK(y[0] == 1.5);
  CHECK(z[0] == doctest::Approx(1.0 / 1.5).epsilon(1e-15));
  for (std::size_t i = 0; i < y.size(); i += 50)
    CHECK(y[i] == doctest::Approx(2.25 * z[i]).epsilon(1e-13));
  // with the drift term switched on the paths start at x0 and stay positive
  auto y2 = sim::levy_ou_path(psi, cfg, 0.5, 1.0);
  CHECK(y2[0] == 0.5);
  for (double v : y2) CHECK(v > 0.0);
}

TEST_CASE("pathwise identities") {
  auto psi = LevyExponent::brownian(0.1, 1.0);
  PathConfig cfg = quick_config();
  cfg.dt = 1e-3;
  cfg.horizon = 3.0;
  // the exponential-functional process against the composed time change,
  // including the rescaled clock at x0 != 1
  CHECK(sim::z_time_change_gap(psi, cfg, 1.0) < 5.0 * cfg.dt);
  CHECK(sim::z_time_change_gap(psi, cfg, 2.0) < 5.0 * cfg.dt);
  CHECK(sim::delta_nabla_gap(psi, cfg, 1.0) < 5.0 * cfg.dt);
  CHECK(sim::yhat_identity_gap(psi, cfg, 1.0) < 1e-12);
  CHECK(sim::lambda_zero_gap(psi, cfg, 1.0) < 1e-12);
}

TEST_CASE("z passage against its closed form") {
  auto psi = LevyExponent::brownian(0.25, 1.0);
  PathConfig cfg = quick_config();
  cfg.lambda = 0.5;
  cfg.dt = 1e-3;
  double q = 0.6;
  double formula = fpt::laplace({fpt::Process::z_upward, psi, 2.0, 0.5, q, 0.8, 1.6});
  auto r = sim::estimate_fpt_laplace(psi, cfg, fpt::Process::z_upward, 0.8, 1.6, q, 8000);
  CHECK(std::abs(r.estimate - formula) < 4.0 * r.std_error);
  double formula_y = fpt::laplace({fpt::Process::yhat_downward, psi, 2.0, 0.5, q, 1.5, 0.9});
  auto ry = sim::estimate_fpt_laplace(psi, cfg, fpt::Process::yhat_downward, 1.5, 0.9, q, 8000);
  CHECK(std::abs(ry.estimate - formula_y) < 4.0 * ry.std_error);
}
