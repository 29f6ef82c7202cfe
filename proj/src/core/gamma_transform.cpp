#include "core/gamma_transform.hpp"

#include <cmath>

#include "core/common.hpp"

namespace ssou {

GammaTransform::GammaTransform(double q, double chi, double alpha, Options options)
    : q_(q), chi_(chi), alpha_(alpha), options_(options) {
  if (!(q > 0.0 && chi > 0.0 && alpha > 0.0))
    raise(errc::domain, "GammaTransform: q, chi, alpha must be positive");
  a_ = q_ / chi_;
  prefactor_ = std::pow(chi_, a_);
  if (!options_.force_adaptive && a_ >= options_.singular_exponent_cutoff)
    rule_ = std::make_shared<GaussLaguerreRule>(options_.gauss_laguerre_order, a_ - 1.0);
}

double GammaTransform::apply(const std::function<double(double)>& f, double x) const {
  auto integrand = [&](double r) {
    double v = f(std::pow(chi_ * r, 1.0 / alpha_) * x);
    if (!std::isfinite(v)) raise(errc::non_finite, "GammaTransform: f returned non-finite value");
    return v;
  };
  double gamma_a = std::tgamma(a_);
  if (rule_) return prefactor_ / gamma_a * rule_->integrate(integrand);

  // int_0^inf g(r) r^(a-1) e^-r dr with r = t^(1/a):
  // = (1/a) int_0^inf g(t^(1/a)) e^(-t^(1/a)) dt, regular at t = 0.
  double inv_a = 1.0 / a_;
  auto transformed = [&](double t) {
    if (t <= 0.0) return integrand(0.0) * 1.0;
    double r = std::pow(t, inv_a);
    return integrand(r) * std::exp(-r);
  };
  // support: e^(-t^(1/a)) is negligible once t^(1/a) > 40
  double t_max = std::pow(745.0, a_);
  QuadResult res = integrate_adaptive(transformed, 0.0, std::min(t_max, 1e6),
                                      0.0, options_.adaptive_rtol, 4000);
  double tail = 0.0;
  if (t_max > 1e6) {
    QuadResult rtail = integrate_to_infinity(transformed, 1e6, 1e-14, options_.adaptive_rtol);
    tail = rtail.value;
  }
  return prefactor_ / gamma_a * inv_a * (res.value + tail);
}

double GammaTransform::time_space_invariant(const std::function<double(double)>& f, double t,
                                            double x) const {
  if (t < 0.0) raise(errc::domain, "time_space_invariant: t must be nonnegative");
  double scale = std::pow(1.0 + chi_ * t, -1.0 / alpha_);
  double discount = std::pow(1.0 + chi_ * t, -a_);
  return discount * apply([&](double y) { return f(scale * y); }, x);
}

}  // namespace ssou
