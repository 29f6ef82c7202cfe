#include "core/gammafn.hpp"

#include <cmath>

#include "core/common.hpp"

namespace ssou {

namespace {

constexpr double kPi = 3.14159265358979323846;

bool near_nonpositive_integer(double z, double tol = 1e-12) {
  if (z > 0.5) return false;
  return std::abs(z - std::round(z)) < tol;
}

}  // namespace

double lgamma_ratio(double num, double den) {
  if (!(num > 0.0) || !(den > 0.0)) raise(errc::domain, "lgamma_ratio: arguments must be positive");
  return std::lgamma(num) - std::lgamma(den);
}

double lgamma_diff(double x, double delta) {
  if (!(x > 0.0) || !(x + delta > 0.0)) raise(errc::domain, "lgamma_diff: arguments must be positive");
  double lo = std::min(x, x + delta);
  if (lo < 20.0) return std::lgamma(x + delta) - std::lgamma(x);
  // Stirling: lgamma(z) = (z - 1/2) ln z - z + ln(2 pi)/2 + c(z),
  // c(z) = 1/(12 z) - 1/(360 z^3) + 1/(1260 z^5) - 1/(1680 z^7).
  auto c = [](double z) {
    double iz = 1.0 / z;
    double iz2 = iz * iz;
    return iz * (1.0 / 12.0 - iz2 * (1.0 / 360.0 - iz2 * (1.0 / 1260.0 - iz2 / 1680.0)));
  };
  double l = std::log1p(delta / x);
  return delta * std::log(x) + (x + delta - 0.5) * l - delta + c(x + delta) - c(x);
}

double gamma_ratio(double num, double den) {
  if (near_nonpositive_integer(den)) {
    if (near_nonpositive_integer(num)) raise(errc::domain, "gamma_ratio: pole over pole");
    return 0.0;  // 1/Gamma vanishes at poles
  }
  if (near_nonpositive_integer(num)) raise(errc::domain, "gamma_ratio: numerator on a Gamma pole");
  if (num > 0.0 && den > 0.0) return std::exp(std::lgamma(num) - std::lgamma(den));
  // Reflect negative arguments: Gamma(x) = pi / (sin(pi x) Gamma(1-x)).
  double log_abs = 0.0;
  double sign = 1.0;
  auto absorb = [&](double x, double power) {
    // multiplies result by Gamma(x)^power
    if (x > 0.0) {
      log_abs += power * std::lgamma(x);
    } else {
      double s = std::sin(kPi * x);
      log_abs += power * (std::log(kPi) - std::log(std::abs(s)) - std::lgamma(1.0 - x));
      if (s < 0.0 && std::abs(std::remainder(power, 2.0)) > 0.5) sign = -sign;
    }
  };
  absorb(num, 1.0);
  absorb(den, -1.0);
  return sign * std::exp(log_abs);
}

double pochhammer_real(double z, double a) {
  if (!(z + a > 0.0)) raise(errc::domain, "pochhammer_real: z + a must be positive");
  if (near_nonpositive_integer(z)) return 0.0;
  return gamma_ratio(z + a, z);
}

double log_pochhammer(double q, int n) {
  if (!(q > 0.0)) raise(errc::domain, "log_pochhammer: q must be positive");
  if (n < 0) raise(errc::domain, "log_pochhammer: n must be nonnegative");
  if (n == 0) return 0.0;
  return std::lgamma(q + n) - std::lgamma(q);
}

double digamma(double x) {
  if (near_nonpositive_integer(x)) raise(errc::domain, "digamma: pole");
  if (x < 0.0) {
    // reflection: psi(x) = psi(1-x) - pi cot(pi x)
    return digamma(1.0 - x) - kPi / std::tan(kPi * x);
  }
  double result = 0.0;
  while (x < 8.0) {
    result -= 1.0 / x;
    x += 1.0;
  }
  // asymptotic expansion, |error| < 1e-16 for x >= 8
  double inv = 1.0 / x;
  double inv2 = inv * inv;
  result += std::log(x) - 0.5 * inv -
            inv2 * (1.0 / 12.0 - inv2 * (1.0 / 120.0 - inv2 * (1.0 / 252.0 - inv2 / 240.0)));
  return result;
}

}  // namespace ssou
