#include "core/series.hpp"

#include <cmath>

#include "core/common.hpp"
#include "core/gammafn.hpp"

namespace ssou {

namespace {
constexpr double kEulerGamma = 0.57721566490153286061;
}

SeriesEvaluator::SeriesEvaluator(LevyExponent psi, double alpha, SeriesOptions options)
    : psi_(std::move(psi)), alpha_(alpha), options_(options) {
  if (!(alpha_ > 0.0)) raise(errc::domain, "SeriesEvaluator: alpha must be positive");
  if (!(options_.rtol > 0.0)) raise(errc::domain, "SeriesEvaluator: rtol must be positive");
  if (options_.max_terms < 8) raise(errc::domain, "SeriesEvaluator: max_terms must be >= 8");

  psi_at_k_.resize(options_.max_terms + 1, 0.0);
  log_abs_a_.resize(options_.max_terms + 1, 0.0);
  sign_a_.resize(options_.max_terms + 1, 1);
  for (int k = 1; k <= options_.max_terms; ++k) {
    double v = psi_(alpha_ * k);
    psi_at_k_[k] = v;
    if (v == 0.0 && zero_denominator_at_ < 0) zero_denominator_at_ = k;
    if (zero_denominator_at_ < 0) {
      log_abs_a_[k] = log_abs_a_[k - 1] - std::log(std::abs(v));
      sign_a_[k] = (v < 0.0) ? -sign_a_[k - 1] : sign_a_[k - 1];
    }
  }
}

double SeriesEvaluator::coeff(int n) const {
  return coeff_sign(n) * std::exp(log_abs_coeff(n));
}

double SeriesEvaluator::log_abs_coeff(int n) const {
  if (n < 0 || n > options_.max_terms) raise(errc::domain, "coeff: index out of range");
  if (zero_denominator_at_ >= 0 && n >= zero_denominator_at_)
    raise(errc::zero_denominator,
          "coeff: psi(alpha k) = 0 at k = " + std::to_string(zero_denominator_at_));
  return log_abs_a_[n];
}

int SeriesEvaluator::coeff_sign(int n) const {
  log_abs_coeff(n);  // range/zero checks
  return sign_a_[n];
}

ComplexSeriesValue SeriesEvaluator::sum_terms(bool with_q, double q,
                                              std::complex<double> z) const {
  ComplexSeriesValue out;
  if (with_q && !(q > 0.0)) {
    if (q == 0.0) {  // (0)_n vanishes for n >= 1
      out.value = 1.0;
      out.terms_used = 1;
      return out;
    }
    raise(errc::domain, "eval_q: q must be nonnegative");
  }
  std::complex<double> term = 1.0;
  std::complex<double> sum = 1.0;
  if (z == std::complex<double>(0.0, 0.0)) {
    out.value = 1.0;
    out.terms_used = 1;
    return out;
  }
  int consecutive_small = 0;
  double prev_mag = 1.0;
  double ratio = 1.0;
  for (int n = 1; n <= options_.max_terms; ++n) {
    if (zero_denominator_at_ >= 0 && n >= zero_denominator_at_)
      raise(errc::zero_denominator,
            "eval: psi(alpha k) = 0 at k = " + std::to_string(zero_denominator_at_));
    std::complex<double> factor = z / psi_at_k_[n];
    if (with_q) factor *= (q + n - 1.0);
    term *= factor;
    sum += term;
    double mag = std::abs(term);
    ratio = mag / std::max(prev_mag, 1e-300);
    prev_mag = mag;
    double scale = std::max(std::abs(sum), 1e-300);
    if (mag < options_.rtol * scale && ratio < 0.9) {
      if (++consecutive_small >= 3) {
        out.value = sum;
        out.terms_used = n + 1;
        out.tail_bound = mag * ratio / (1.0 - ratio);
        if (!std::isfinite(sum.real()) || !std::isfinite(sum.imag()))
          raise(errc::non_finite, "eval: series overflowed");
        return out;
      }
    } else {
      consecutive_small = 0;
    }
  }
  raise(errc::truncation, "eval: series did not converge within max_terms");
}

SeriesValue SeriesEvaluator::eval(double z) const {
  ComplexSeriesValue c = sum_terms(false, 0.0, z);
  return SeriesValue{c.value.real(), c.terms_used, c.tail_bound};
}

SeriesValue SeriesEvaluator::eval_q(double q, double z) const {
  ComplexSeriesValue c = sum_terms(true, q, z);
  return SeriesValue{c.value.real(), c.terms_used, c.tail_bound};
}

ComplexSeriesValue SeriesEvaluator::eval(std::complex<double> z) const {
  return sum_terms(false, 0.0, z);
}

ComplexSeriesValue SeriesEvaluator::eval_q(double q, std::complex<double> z) const {
  return sum_terms(true, q, z);
}

double c_theta(const LevyExponent& psi, double alpha, double beta, double a_beta) {
  if (!(alpha > 0.0)) raise(errc::domain, "c_theta: alpha must be positive");
  if (!(beta >= 0.0 && beta <= 1.0)) raise(errc::domain, "c_theta: beta must lie in [0,1]");
  if (!(a_beta > 0.0)) raise(errc::domain, "c_theta: a_beta must be positive");
  auto theta_opt = psi.cramer_theta();
  if (!theta_opt) raise(errc::no_root, "c_theta: exponent has no Cramer root");
  const double theta = *theta_opt;
  const double tau = theta / alpha;

  const int max_terms = 400000;
  KahanSum log_product;
  double window[8] = {0};  // last values of k^2 log t_k
  int window_filled = 0;
  double last_log_t = 1.0;
  int k = 1;
  bool converged = false;
  for (; k <= max_terms; ++k) {
    // log t_k = log psi(ak+theta) - log psi(ak) - log(1 + tau/k) - beta tau/k.
    // The pieces are O(1/k) and cancel to O(1/k^2); computing them from
    // log_psi keeps the noise floor near 1e-15 per term.
    double log_t = psi.log_psi(alpha * k + theta) - psi.log_psi(alpha * k) -
                   std::log1p(tau / k) - beta * tau / k;
    log_product.add(log_t);
    window[k % 8] = static_cast<double>(k) * k * log_t;
    if (window_filled < 8) ++window_filled;
    last_log_t = log_t;
    if (std::abs(last_log_t) < 1e-12 && k > 256) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    if (!(std::abs(last_log_t) < 1e-8))
      raise(errc::product_divergence, "c_theta: partial products failed the Cauchy criterion");
    k = max_terms;
  }
  // Tail sum_{j>k} c2/j^2 with c2 fitted from the last window of k^2 log t_k,
  // using the trigamma asymptotic for sum_{j>k} 1/j^2.
  if (window_filled == 8) {
    double c2 = 0.0;
    for (double w : window) c2 += w;
    c2 /= 8.0;
    double x = k + 1.0;
    double trigamma = 1.0 / x + 1.0 / (2.0 * x * x) + 1.0 / (6.0 * x * x * x);
    log_product.add(c2 * trigamma);
  }

  double log_c = -tau * std::log(a_beta) - (1.0 + beta) * tau * std::log(alpha) +
                 kEulerGamma * beta * tau - std::lgamma(1.0 + tau) + log_product.value();
  return std::exp(log_c);
}

double c_theta_auto(const LevyExponent& psi, double alpha) {
  auto g = psi.growth();
  if (!g) raise(errc::unsupported, "c_theta_auto: exponent kind has no known tail growth");
  return c_theta(psi, alpha, g->beta, g->a_beta);
}

namespace {
double require_cramer_root(const LevyExponent& psi, double alpha) {
  auto theta = psi.cramer_theta();
  if (!theta) raise(errc::no_root, "N: exponent has no Cramer root");
  if (!(*theta < alpha)) raise(errc::domain, "N: requires 0 < theta < alpha");
  return *theta;
}
}  // namespace

ZeroPassageFunction::ZeroPassageFunction(LevyExponent psi, double alpha, SeriesOptions options)
    : theta_(require_cramer_root(psi, alpha)),
      tau_(theta_ / alpha),
      c_theta_(c_theta_auto(psi, alpha)),
      base_(psi, alpha, options),
      shifted_(psi.esscher(theta_), alpha, options) {}

double ZeroPassageFunction::eval(double q, double y) const {
  if (y < 0.0) raise(errc::domain, "N: argument must be nonnegative");
  if (q < 0.0) raise(errc::domain, "N: q must be nonnegative");
  double head = base_.eval_q(q, y).value;
  if (q == 0.0) return head;  // Gamma(q+tau)/Gamma(q) -> 0
  double weight = c_theta_ * std::pow(y, tau_) * std::exp(lgamma_ratio(q + tau_, q));
  double tail = shifted_.eval_q(q + tau_, y).value;
  return head - weight * tail;
}

double ZeroPassageFunction::term_scale(double q, double y) const {
  double head = std::abs(base_.eval_q(q, y).value);
  if (q == 0.0) return std::max(head, 1.0);
  double weight = c_theta_ * std::pow(y, tau_) * std::exp(lgamma_ratio(q + tau_, q));
  double tail = std::abs(shifted_.eval_q(q + tau_, y).value);
  return std::max({head, weight * tail, 1.0});
}

double eval_n(const LevyExponent& psi, double alpha, double theta, double q, double x,
              SeriesOptions options) {
  auto root = psi.cramer_theta();
  if (!root) raise(errc::no_root, "eval_n: exponent has no Cramer root");
  if (std::abs(*root - theta) > 1e-8 * std::max(1.0, std::abs(*root)))
    raise(errc::domain, "eval_n: supplied theta does not match the Cramer root");
  ZeroPassageFunction fn(psi, alpha, options);
  return fn.eval(q, std::pow(x, alpha));
}

}  // namespace ssou
