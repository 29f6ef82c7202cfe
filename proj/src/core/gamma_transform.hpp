#pragma once

#include <functional>
#include <memory>

#include "core/quadrature.hpp"

namespace ssou {

// Mixing operator that turns a 1-invariant function f of an alpha-self-similar
// semigroup into a q-invariant function of its Ornstein-Uhlenbeck image:
//
//   (T f)(x) = chi^(q/chi) E[ f( (chi G)^(1/alpha) x ) ],   G ~ Gamma(q/chi),
//            = chi^(q/chi) / Gamma(q/chi)
//              * int_0^inf f((chi r)^(1/alpha) x) e^-r r^(q/chi - 1) dr.
//
// The chi^(q/chi) prefactor is part of the returned value. The weight is
// exactly the Gamma(q/chi) density, so the default rule is generalized
// Gauss-Laguerre with exponent q/chi - 1; for q/chi < 0.05 the weight is
// nearly singular at 0 and an adaptive rule on the substitution r = t^(1/a)
// takes over.
struct GammaTransformOptions {
  int gauss_laguerre_order = 64;
  double adaptive_rtol = 1e-11;
  double singular_exponent_cutoff = 0.05;  // switch to adaptive below this q/chi
  bool force_adaptive = false;
};

class GammaTransform {
public:
  using Options = GammaTransformOptions;

  GammaTransform(double q, double chi, double alpha, Options options = {});

  double apply(const std::function<double(double)>& f, double x) const;

  // Deterministic part of the space-time invariance at clock time t:
  //   (1 + chi t)^(-q/chi) (T d_s f)(x),  s = (1 + chi t)^(-1/alpha).
  // Averaging this over samples of the self-similar process at time t
  // reproduces the t = 0 value.
  double time_space_invariant(const std::function<double(double)>& f, double t, double x) const;

  double q() const { return q_; }
  double chi() const { return chi_; }
  double alpha() const { return alpha_; }
  double weight_exponent() const { return a_; }
  bool using_adaptive() const { return !rule_; }

private:
  double q_;
  double chi_;
  double alpha_;
  double a_;  // q/chi
  double prefactor_;
  Options options_;
  std::shared_ptr<const GaussLaguerreRule> rule_;  // null when adaptive
};

}  // namespace ssou
