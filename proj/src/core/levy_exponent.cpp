#include "core/levy_exponent.hpp"

#include <cmath>

#include <json.hpp>

#include "core/common.hpp"
#include "core/gammafn.hpp"
#include "core/quadrature.hpp"
#include "core/rootfind.hpp"

namespace ssou {

namespace {

// e^x - 1 - x without cancellation: for |x| small the direct difference is
// noise scaled by |x| eps, which the near-origin density blow-up amplifies.
double compensated_exp(double x) {
  if (std::abs(x) < 1e-4) return 0.5 * x * x * (1.0 + x / 3.0 + x * x / 12.0);
  return std::expm1(x) - x;
}

// Jump integral of the Levy-Khintchine form, int_(-inf,0) (e^{ur}-1-ur) nu(dr),
// with r = -e^y so that a density blowing up like |r|^(-1-a), a < 2, becomes
// integrable in y. Absolute tolerance 1e-10.
double jump_integral(const std::function<double(double)>& density, double u) {
  auto integrand = [&](double y) {
    double r = -std::exp(y);
    return compensated_exp(u * r) * density(r) * std::exp(y);
  };
  // y in (-inf, 0]: r in [-1, 0). The integrand decays like e^{(2-a)y}, which
  // can be slow for a near 2, so the left tail is extended adaptively.
  QuadResult near_zero =
      integrate_to_infinity([&](double t) { return integrand(-t); }, 0.0, 1e-10, 1e-10);
  // y in [0, inf): r in (-inf, -1]. Exponential moments make this decay fast.
  QuadResult tail = integrate_to_infinity(integrand, 0.0, 1e-10, 1e-10);
  double total = near_zero.value + tail.value;
  if (!std::isfinite(total))
    raise(errc::quadrature, "jump_integral: non-finite result");
  return total;
}

}  // namespace

struct LevyExponent::Impl {
  ExponentKind kind;

  // brownian / tabulated
  double b = 0.0;
  double sigma = 0.0;
  std::function<double(double)> density;  // tabulated only

  // pochhammer
  double alpha = 0.0;
  double gamma = 0.0;
  double poch_const = 0.0;  // (gamma-1)_alpha

  // esscher wrapper
  std::shared_ptr<const Impl> base;
  double shift = 0.0;
  double psi_at_shift = 0.0;

  double theta0 = 0.0;

  double eval(double u) const {
    if (u < 0.0) raise(errc::domain, "psi: u must be nonnegative");
    switch (kind) {
      case ExponentKind::brownian_drift:
        return b * u + 0.5 * sigma * u * u;
      case ExponentKind::pochhammer:
        return (pochhammer_real(u + gamma - 1.0, alpha) - poch_const) / alpha;
      case ExponentKind::tabulated:
        if (u == 0.0) return 0.0;
        return b * u + 0.5 * sigma * u * u + jump_integral(density, u);
      case ExponentKind::esscher:
        return base->eval(u + shift) - psi_at_shift;
    }
    raise(errc::unsupported, "psi: unknown kind");
  }

  double deriv(double u) const {
    switch (kind) {
      case ExponentKind::brownian_drift:
        return b + sigma * u;
      case ExponentKind::pochhammer: {
        double z = u + gamma - 1.0;
        double zr = std::round(z);
        if (z < 0.5 && std::abs(z - zr) < 1e-5) {
          // Near the Gamma poles z = 0, -1 the product (z)_a [psi(z+a)-psi(z)]
          // is smooth; expand around the pole.
          int n = static_cast<int>(-zr);
          double sign = (n % 2 == 0) ? 1.0 : -1.0;  // n! = 1 for n in {0,1}
          return std::exp(std::lgamma(z + alpha)) * sign *
                 (1.0 + (z - zr) * digamma(z + alpha)) / alpha;
        }
        return pochhammer_real(z, alpha) * (digamma(z + alpha) - digamma(z)) / alpha;
      }
      case ExponentKind::tabulated: {
        double h = 1e-6 * std::max(1.0, std::abs(u));
        if (u - h < 0.0) h = 0.5 * u + 1e-9;
        if (u <= 1e-9) return b;  // full compensation: psi'(0+) = b
        return (eval(u + h) - eval(u - h)) / (2.0 * h);
      }
      case ExponentKind::esscher:
        return base->deriv(u + shift);
    }
    raise(errc::unsupported, "psi': unknown kind");
  }

  double mean() const {
    switch (kind) {
      case ExponentKind::brownian_drift:
      case ExponentKind::tabulated:
        return b;
      case ExponentKind::pochhammer:
      case ExponentKind::esscher:
        return deriv(0.0);
    }
    raise(errc::unsupported, "mean: unknown kind");
  }

  double log_eval(double u) const {
    switch (kind) {
      case ExponentKind::pochhammer: {
        double z = u + gamma - 1.0;
        if (z >= 20.0) {
          double log_p = lgamma_diff(z, alpha);
          return log_p + std::log1p(-poch_const * std::exp(-log_p)) - std::log(alpha);
        }
        break;
      }
      case ExponentKind::esscher: {
        double base_val = base->eval(u + shift);
        if (base_val > 0.0 && base_val > 2.0 * std::abs(psi_at_shift)) {
          double log_base = base->log_eval(u + shift);
          return log_base + std::log1p(-psi_at_shift * std::exp(-log_base));
        }
        break;
      }
      default:
        break;
    }
    double v = eval(u);
    if (!(v > 0.0)) raise(errc::domain, "log_psi: psi(u) must be positive");
    return std::log(v);
  }
};

namespace {

double compute_theta0(const LevyExponent::Impl& impl) {
  double m = impl.mean();
  if (m >= 0.0) return 0.0;
  auto f = [&](double u) { return impl.eval(u); };
  double hi = expand_upper(f, 1.0, 1e-300);
  double lo = hi * 0.5;
  for (int i = 0; i < 200 && f(lo) >= 0.0; ++i) lo *= 0.5;
  if (f(lo) >= 0.0) raise(errc::bracket, "cramer_theta: no negative segment found");
  double slope = std::abs((f(hi) - f(lo)) / (hi - lo));
  double f_tol = 1e-13 * std::max(1.0, slope);
  return solve_monotone(f, lo, hi, f_tol, [&](double u) { return impl.deriv(u); });
}

std::shared_ptr<const LevyExponent::Impl> finalize(std::shared_ptr<LevyExponent::Impl> impl) {
  impl->theta0 = compute_theta0(*impl);
  return impl;
}

}  // namespace

LevyExponent LevyExponent::brownian(double b, double sigma) {
  if (sigma < 0.0) raise(errc::domain, "brownian: sigma must be nonnegative");
  if (sigma == 0.0 && b < 0.0)
    raise(errc::domain, "brownian: pure drift must be nonnegative to stay finite on [0,inf)");
  auto impl = std::make_shared<Impl>();
  impl->kind = ExponentKind::brownian_drift;
  impl->b = b;
  impl->sigma = sigma;
  return LevyExponent(finalize(std::move(impl)));
}

LevyExponent LevyExponent::pochhammer(double alpha, double gamma) {
  if (!(alpha > 1.0 && alpha < 2.0)) raise(errc::domain, "pochhammer: alpha must be in (1,2)");
  if (!(gamma > 1.0 - alpha)) raise(errc::domain, "pochhammer: gamma must exceed 1 - alpha");
  auto impl = std::make_shared<Impl>();
  impl->kind = ExponentKind::pochhammer;
  impl->alpha = alpha;
  impl->gamma = gamma;
  impl->poch_const = pochhammer_real(gamma - 1.0, alpha);
  return LevyExponent(finalize(std::move(impl)));
}

LevyExponent LevyExponent::tabulated(double b, double sigma,
                                     std::function<double(double)> jump_density) {
  if (sigma < 0.0) raise(errc::domain, "tabulated: sigma must be nonnegative");
  if (!jump_density) raise(errc::domain, "tabulated: missing jump density");
  auto impl = std::make_shared<Impl>();
  impl->kind = ExponentKind::tabulated;
  impl->b = b;
  impl->sigma = sigma;
  impl->density = std::move(jump_density);
  return LevyExponent(finalize(std::move(impl)));
}

LevyExponent LevyExponent::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    raise(errc::config, std::string("exponent descriptor: ") + e.what());
  }
  if (!j.is_object() || !j.contains("kind"))
    raise(errc::config, "exponent descriptor: expected object with \"kind\"");
  std::string kind = j["kind"].get<std::string>();
  try {
    if (kind == "brownian")
      return brownian(j.at("b").get<double>(), j.at("sigma").get<double>());
    if (kind == "pochhammer")
      return pochhammer(j.at("alpha").get<double>(), j.at("gamma").get<double>());
    if (kind == "esscher")
      return from_json(j.at("base").dump()).esscher(j.at("gamma").get<double>());
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    raise(errc::config, std::string("exponent descriptor: ") + e.what());
  }
  raise(errc::config, "exponent descriptor: unknown kind \"" + kind + "\"");
}

LevyExponent LevyExponent::esscher(double gamma) const {
  if (gamma < 0.0) raise(errc::domain, "esscher: shift must be nonnegative");
  if (gamma == 0.0) return *this;
  switch (impl_->kind) {
    case ExponentKind::brownian_drift:
      return brownian(impl_->b + impl_->sigma * gamma, impl_->sigma);
    case ExponentKind::pochhammer:
      return pochhammer(impl_->alpha, impl_->gamma + gamma);
    case ExponentKind::esscher: {
      auto impl = std::make_shared<Impl>();
      impl->kind = ExponentKind::esscher;
      impl->base = impl_->base;
      impl->shift = impl_->shift + gamma;
      impl->psi_at_shift = impl_->base->eval(impl->shift);
      return LevyExponent(finalize(std::move(impl)));
    }
    case ExponentKind::tabulated: {
      auto impl = std::make_shared<Impl>();
      impl->kind = ExponentKind::esscher;
      impl->base = impl_;
      impl->shift = gamma;
      impl->psi_at_shift = impl_->eval(gamma);
      return LevyExponent(finalize(std::move(impl)));
    }
  }
  raise(errc::unsupported, "esscher: unknown kind");
}

double LevyExponent::operator()(double u) const { return impl_->eval(u); }
double LevyExponent::derivative(double u) const { return impl_->deriv(u); }
double LevyExponent::log_psi(double u) const { return impl_->log_eval(u); }
double LevyExponent::mean() const { return impl_->mean(); }
double LevyExponent::theta0() const { return impl_->theta0; }

std::optional<double> LevyExponent::cramer_theta() const {
  if (impl_->mean() >= 0.0) return std::nullopt;
  return impl_->theta0;
}

double LevyExponent::phi(double q) const {
  if (q < 0.0) raise(errc::domain, "phi: q must be nonnegative");
  if (q == 0.0) return impl_->theta0;
  auto f = [&](double u) { return impl_->eval(u); };
  double lo = impl_->theta0;
  double hi = expand_upper(f, std::max(1.0, lo + 1.0), q);
  double slope = std::abs((f(hi) - q) / std::max(hi - lo, 1e-30)) + 1.0;
  double f_tol = 1e-13 * std::max(1.0, std::min(slope, std::abs(q) + 1.0));
  return solve_monotone([&](double u) { return f(u) - q; }, lo, hi, f_tol,
                        [&](double u) { return impl_->deriv(u); });
}

ExponentKind LevyExponent::kind() const { return impl_->kind; }

std::optional<GrowthProfile> LevyExponent::growth() const {
  const Impl* impl = impl_.get();
  while (impl->kind == ExponentKind::esscher) impl = impl->base.get();
  switch (impl->kind) {
    case ExponentKind::brownian_drift:
    case ExponentKind::tabulated:
      if (impl->sigma > 0.0) return GrowthProfile{1.0, 0.5 * impl->sigma};
      if (impl->kind == ExponentKind::brownian_drift && impl->b > 0.0)
        return GrowthProfile{0.0, impl->b};
      return std::nullopt;
    case ExponentKind::pochhammer:
      return GrowthProfile{impl->alpha - 1.0, 1.0 / impl->alpha};
    default:
      return std::nullopt;
  }
}

double LevyExponent::brownian_b() const {
  if (impl_->kind != ExponentKind::brownian_drift) raise(errc::unsupported, "not a brownian kind");
  return impl_->b;
}
double LevyExponent::brownian_sigma() const {
  if (impl_->kind != ExponentKind::brownian_drift) raise(errc::unsupported, "not a brownian kind");
  return impl_->sigma;
}
double LevyExponent::pochhammer_alpha() const {
  if (impl_->kind != ExponentKind::pochhammer) raise(errc::unsupported, "not a pochhammer kind");
  return impl_->alpha;
}
double LevyExponent::pochhammer_gamma() const {
  if (impl_->kind != ExponentKind::pochhammer) raise(errc::unsupported, "not a pochhammer kind");
  return impl_->gamma;
}

std::string LevyExponent::describe() const {
  switch (impl_->kind) {
    case ExponentKind::brownian_drift:
      return "brownian(b=" + std::to_string(impl_->b) + ",sigma=" + std::to_string(impl_->sigma) + ")";
    case ExponentKind::pochhammer:
      return "pochhammer(alpha=" + std::to_string(impl_->alpha) +
             ",gamma=" + std::to_string(impl_->gamma) + ")";
    case ExponentKind::tabulated:
      return "tabulated";
    case ExponentKind::esscher:
      return "esscher(shift=" + std::to_string(impl_->shift) + ")";
  }
  return "?";
}

}  // namespace ssou
