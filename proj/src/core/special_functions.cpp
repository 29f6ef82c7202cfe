#include "core/special_functions.hpp"

#include <cmath>

#include "core/common.hpp"
#include "core/gammafn.hpp"

namespace ssou {
namespace special {

namespace {

constexpr int kMaxTerms = 600;
constexpr double kRtol = 1e-14;

bool integer_like(double x, double tol = 1e-9) { return std::abs(x - std::round(x)) < tol; }

// Sums term_0 + term_0*ratio(1) + ... with ratio(n) = t_n / t_{n-1}.
template <typename Ratio>
double sum_series(double term0, Ratio ratio) {
  double term = term0;
  double sum = term0;
  int small_count = 0;
  for (int n = 1; n <= kMaxTerms; ++n) {
    term *= ratio(n);
    sum += term;
    if (std::abs(term) < kRtol * std::abs(sum)) {
      if (++small_count >= 3) return sum;
    } else {
      small_count = 0;
    }
  }
  raise(errc::truncation, "special function series did not converge");
}

}  // namespace

double bessel_i(double nu, double x) {
  if (nu <= -1.0 && integer_like(nu))
    raise(errc::domain, "bessel_i: order must not be a negative integer");
  if (x == 0.0) {
    if (nu == 0.0) return 1.0;
    return nu > 0.0 ? 0.0 : INFINITY;
  }
  if (x < 0.0) raise(errc::domain, "bessel_i: x must be nonnegative");
  double h = 0.5 * x;
  // leading term (x/2)^nu / Gamma(nu+1)
  double lead = std::exp(nu * std::log(h) - std::lgamma(nu + 1.0));
  double h2 = h * h;
  return sum_series(lead, [&](int n) { return h2 / (n * (nu + n)); });
}

double kummer_phi(double a, double b, double x) {
  if (b <= 0.0 && integer_like(b))
    raise(errc::domain, "kummer_phi: b must not be a nonpositive integer");
  return sum_series(1.0, [&](int n) { return (a + n - 1.0) * x / ((b + n - 1.0) * n); });
}

double tricomi_u(double a, double b, double x) {
  if (integer_like(b))
    raise(errc::domain, "tricomi_u: integer b sits on the connection-formula pole");
  if (!(x > 0.0)) raise(errc::domain, "tricomi_u: x must be positive");
  // U(a,b,x) = Gamma(1-b)/Gamma(a-b+1) Phi(a,b,x)
  //          + Gamma(b-1)/Gamma(a)  x^(1-b) Phi(a-b+1, 2-b, x)
  double first = gamma_ratio(1.0 - b, a - b + 1.0) * kummer_phi(a, b, x);
  double second = gamma_ratio(b - 1.0, a) * std::pow(x, 1.0 - b) * kummer_phi(a - b + 1.0, 2.0 - b, x);
  return first + second;
}

double prabhakar_ml(double alpha, double beta, double q, double z) {
  if (!(alpha > 0.0) || !(beta > 0.0)) raise(errc::domain, "prabhakar_ml: alpha, beta must be positive");
  double lead = 1.0 / std::tgamma(beta);
  return sum_series(lead, [&](int n) {
    return (q + n - 1.0) * z / n * std::exp(-lgamma_diff(alpha * (n - 1.0) + beta, alpha));
  });
}

double ml_q_series(double alpha, double beta, double q, double z) {
  if (!(alpha > 0.0) || !(beta > 0.0)) raise(errc::domain, "ml_q_series: alpha, beta must be positive");
  double lead = 1.0 / std::tgamma(beta);
  return sum_series(lead, [&](int n) {
    return (q + n - 1.0) * z * std::exp(-lgamma_diff(alpha * (n - 1.0) + beta, alpha));
  });
}

}  // namespace special
}  // namespace ssou
