#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "core/fpt_formulas.hpp"
#include "core/levy_exponent.hpp"

namespace ssou {
namespace sim {

enum class Scheme { euler, jump_adapted };

// One Monte Carlo experiment: the xi grid step dt, the xi-time horizon, the
// base seed (each path derives an independent stream from (seed, index)),
// and the small-jump cutoff for compound-Poisson kinds (jumps below the
// cutoff are replaced by a variance-matched Gaussian).
struct PathConfig {
  double alpha = 2.0;
  double lambda = 1.0;  // chi = alpha * lambda
  double dt = 1e-3;
  double horizon = 50.0;
  std::uint64_t seed = 1;
  Scheme scheme = Scheme::euler;
  double jump_cutoff = 0.02;
};

struct McResult {
  double estimate = 0.0;
  double std_error = 0.0;
  long n_paths = 0;
  long n_hits = 0;
};

struct FptSample {
  double hit_time = 0.0;
  double overshoot = 0.0;  // spectrally negative upward crossings are continuous
  bool killed = false;     // absorbed at 0 or horizon exceeded before the barrier
};

using SampleSink = std::function<void(long path_index, const FptSample&)>;

// Terminal-law checks for the driving Levy process.
McResult estimate_levy_mean(const LevyExponent& psi, const PathConfig& cfg, double t,
                            long n_paths);
// E[e^(u xi_t)]; compare log against t * psi(u).
McResult estimate_exp_moment(const LevyExponent& psi, const PathConfig& cfg, double u, double t,
                             long n_paths);

// Laplace-transform estimators matching fpt::Process. Killed or horizon-capped
// paths contribute 0 where an indicator applies. Raises errc::insufficient_hits
// when fewer than 100 paths reach the barrier.
McResult estimate_fpt_laplace(const LevyExponent& psi, const PathConfig& cfg,
                              fpt::Process process, double start, double barrier, double q,
                              long n_paths, const SampleSink& sink = nullptr);

// E[ (1+chi t)^(-q/chi) I(q; (1+chi t)^(-1/alpha) X_t) ] started from x0,
// with I(q; x) the Gamma-transformed series (prefactor included). Constant in
// t when the transform maps invariant functions to invariant functions.
McResult estimate_martingale(const LevyExponent& psi, const PathConfig& cfg, double q, double x0,
                             double t, long n_paths);

// E_x0[ U_t^power ] and E_x0[ X_s^power ] (the latter in the self-similar
// clock); used for the stationary-regime moment checks.
McResult estimate_u_moment(const LevyExponent& psi, const PathConfig& cfg, double x0,
                           double power, double t, long n_paths);
McResult estimate_x_moment(const LevyExponent& psi, const PathConfig& cfg, double x0,
                           double power, double s, long n_paths);

// Exponential change of measure at level theta: expectation of f(U_t) under
// the tilted path law, and of f(U_t) (U_t/x0)^theta e^(lambda theta t) 1{t<T0}
// under the base law. The two agree.
McResult estimate_tilted(const LevyExponent& psi, const PathConfig& cfg, double theta, double x0,
                         double t, const std::function<double(double)>& f, long n_paths);
McResult estimate_weighted(const LevyExponent& psi, const PathConfig& cfg, double theta,
                           double x0, double t, const std::function<double(double)>& f,
                           long n_paths);

// Exponential-functional processes built on one driving path (deterministic
// in the seed), sampled on the dt grid:
//   Y_t = e^(alpha xi_t) (x0 + beta int_0^t e^(-alpha xi_s) ds)
//   Z_t = e^(alpha xi_t) (x0 + beta int_0^t e^(+alpha xi_s) ds)^(-1)
std::vector<double> levy_ou_path(const LevyExponent& psi, const PathConfig& cfg, double x0,
                                 double beta);
std::vector<double> z_path(const LevyExponent& psi, const PathConfig& cfg, double x0,
                           double beta);

// Pathwise identity gaps on a single driving path (deterministic in the seed).
// z_time_change: Z built from the exponential-functional expression against
// x0^-1 U^alpha composed with the rescaled clock x0 * int Z.
double z_time_change_gap(const LevyExponent& psi, const PathConfig& cfg, double x0);
// max_t |Delta(x0 * Nabla_t) - t| for the same pair of clocks.
double delta_nabla_gap(const LevyExponent& psi, const PathConfig& cfg, double x0);
// Yhat marched from its own expression against 1/Z.
double yhat_identity_gap(const LevyExponent& psi, const PathConfig& cfg, double x0);
// lambda = 0 degenerates U to X on the same grid.
double lambda_zero_gap(const LevyExponent& psi, const PathConfig& cfg, double x0);

}  // namespace sim
}  // namespace ssou
