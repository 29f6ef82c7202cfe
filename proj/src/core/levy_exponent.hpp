#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>

namespace ssou {

enum class ExponentKind { brownian_drift, pochhammer, tabulated, esscher };

// Tail growth psi(u) ~ a_beta * u^(1+beta) as u -> infinity.
struct GrowthProfile {
  double beta;
  double a_beta;
};

// Laplace exponent of a spectrally negative Levy process,
//   psi(u) = b u + (sigma/2) u^2 + int_(-inf,0) (e^{u r} - 1 - u r) nu(dr),
// finite, convex on [0, inf) with psi(0) = 0. Three concrete kinds:
//
//   brownian_drift  psi(u) = b u + (sigma/2) u^2          (closed form)
//   pochhammer      psi(u) = ((u+g-1)_a - (g-1)_a) / a,   a in (1,2), g > 1-a
//   tabulated       b, sigma plus a caller-supplied jump density on (-inf, 0)
//
// plus an `esscher` wrapper psi_g(u) = psi(u+g) - psi(g) for kinds without a
// closed-form shift. Values are immutable after construction; the largest
// root theta0 of psi is computed eagerly and cached, since the series
// coefficients and the inverse phi depend on it.
class LevyExponent {
public:
  static LevyExponent brownian(double b, double sigma);
  static LevyExponent pochhammer(double alpha, double gamma);
  // `jump_density` is nu(dr)/dr on r < 0; the caller asserts the
  // integrability condition int (|r| ^ |r|^2) nu(dr) < inf.
  static LevyExponent tabulated(double b, double sigma,
                                std::function<double(double)> jump_density);
  // Descriptor {"kind": "brownian"|"pochhammer"|"esscher", ...}.
  static LevyExponent from_json(const std::string& text);

  double operator()(double u) const;
  double derivative(double u) const;
  // log psi(u), requiring psi(u) > 0. Kind-aware so that the relative
  // accuracy survives at large u, where closed forms built from log-gamma
  // differences would cancel.
  double log_psi(double u) const;
  double mean() const;  // psi'(0+)
  double theta0() const;
  // Unique positive root of psi when the mean is negative; empty otherwise.
  std::optional<double> cramer_theta() const;
  // Inverse of psi on [theta0, inf): psi(phi(q)) = q for q >= 0.
  double phi(double q) const;
  LevyExponent esscher(double gamma) const;

  ExponentKind kind() const;
  std::optional<GrowthProfile> growth() const;

  // Kind-specific parameter access (raises errc::unsupported on mismatch).
  double brownian_b() const;
  double brownian_sigma() const;
  double pochhammer_alpha() const;
  double pochhammer_gamma() const;

  std::string describe() const;

  struct Impl;

private:
  explicit LevyExponent(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

}  // namespace ssou
