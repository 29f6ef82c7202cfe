#pragma once

#include <functional>

#include "core/levy_exponent.hpp"
#include "core/series.hpp"

namespace ssou {
namespace fpt {

// First-passage functionals with closed-form Laplace transforms. U is the
// OU image of the spectrally negative alpha-self-similar process attached to
// psi; Z and Yhat are the associated exponential-functional processes; the
// delta clock is Delta_t = int_0^t U_s^(-alpha) ds.
enum class Process {
  u_upward,            // E_x[ e^(-q T_a^U) ]
  x_moving_boundary,   // E_x[ (1 + chi T)^(-q/chi) ], T = hit of a (1+chi u)^(1/alpha)
  u_delta_clock,       // E_x[ e^(-q Delta_{T_a^U}) ; T_a < T_0 ]
  z_upward,            // E_start[ e^(-q T_a^Z) ], start = Z_0, requires mean > 0
  yhat_downward,       // E_start[ e^(-q T_barrier^Yhat) ], barrier <= start
  u_to_zero,           // E_x[ e^(-q T_0^U) ], requires mean < 0, theta < alpha
};

struct Query {
  Process process;
  LevyExponent psi;
  double alpha;
  double lambda;  // chi = alpha * lambda
  double q;
  double start;
  double barrier;
};

// Evaluates the closed form for the query. Values are probabilities of
// Laplace type and must land in (0, 1]; a violation raises errc::meaningless
// instead of clamping.
double laplace(const Query& query, SeriesOptions options = {});

// x -> x^phi(q) H(x): maps a function harmonic for the exponentially tilted
// measure at level phi(q) to one harmonic for the base measure under the
// delta clock.
std::function<double(double)> harmonic_transfer(const LevyExponent& psi,
                                                std::function<double(double)> h, double q);

}  // namespace fpt
}  // namespace ssou
