#include "core/fpt_formulas.hpp"

#include <cmath>

#include "core/common.hpp"
#include "core/gammafn.hpp"

namespace ssou {
namespace fpt {

namespace {

double check_range(double value, const char* who) {
  if (!std::isfinite(value)) raise(errc::non_finite, std::string(who) + ": non-finite value");
  if (value <= 0.0 || value > 1.0 + 1e-9)
    raise(errc::meaningless,
          std::string(who) + ": value " + std::to_string(value) + " outside (0, 1]");
  return std::min(value, 1.0);
}

// Ratio I(q; chi x^alpha) / I(q; chi a^alpha) on a shared evaluator.
double series_ratio(const SeriesEvaluator& series, double q, double z_num, double z_den) {
  return series.eval_q(q, z_num).value / series.eval_q(q, z_den).value;
}

}  // namespace

double laplace(const Query& query, SeriesOptions options) {
  const double alpha = query.alpha;
  const double chi = alpha * query.lambda;
  if (!(alpha > 0.0) || !(query.lambda > 0.0))
    raise(errc::domain, "fpt: alpha and lambda must be positive");
  if (query.q < 0.0) raise(errc::domain, "fpt: q must be nonnegative");

  switch (query.process) {
    case Process::u_upward:
    case Process::x_moving_boundary: {
      // Both transforms share one expression:
      //   I(q/chi; chi x^alpha) / I(q/chi; chi a^alpha).
      if (!(query.start > 0.0 && query.start <= query.barrier))
        raise(errc::meaningless, "fpt: upward query needs 0 < x <= a");
      SeriesEvaluator series(query.psi, alpha, options);
      double v = series_ratio(series, query.q / chi, chi * std::pow(query.start, alpha),
                              chi * std::pow(query.barrier, alpha));
      return check_range(v, "fpt/u_upward");
    }

    case Process::u_delta_clock: {
      // (x/a)^gamma I_gamma(gamma/alpha; chi x^alpha)/I_gamma(gamma/alpha; chi a^alpha)
      // with gamma = phi(q): the transfer x -> x^gamma of the tilted passage
      // problem run at rate lambda gamma.
      if (!(query.start > 0.0 && query.start <= query.barrier))
        raise(errc::meaningless, "fpt: upward query needs 0 < x <= a");
      double gamma = query.psi.phi(query.q);
      if (gamma == 0.0) return 1.0;  // q = 0 with nonnegative mean
      SeriesEvaluator tilted(query.psi.esscher(gamma), alpha, options);
      double v = std::pow(query.start / query.barrier, gamma) *
                 series_ratio(tilted, gamma / alpha, chi * std::pow(query.start, alpha),
                              chi * std::pow(query.barrier, alpha));
      return check_range(v, "fpt/u_delta_clock");
    }

    case Process::z_upward: {
      // Z_0 = start = 1/x; the hit of level a corresponds to the tilted
      // delta-clock passage of U from 1 up to (a x)^(1/alpha):
      //   (a x)^(-gamma/alpha) I_gamma(gamma/alpha; chi) / I_gamma(gamma/alpha; chi a x).
      if (!(query.psi.mean() > 0.0))
        raise(errc::meaningless, "fpt/z: requires positive mean (no killing)");
      if (!(query.start > 0.0 && query.start <= query.barrier))
        raise(errc::meaningless, "fpt/z: needs 0 < start <= barrier");
      double gamma = query.psi.phi(query.q);
      if (gamma == 0.0) return 1.0;
      double ax = query.barrier / query.start;  // a * x with x = 1/start
      SeriesEvaluator tilted(query.psi.esscher(gamma), alpha, options);
      double v = std::pow(ax, -gamma / alpha) *
                 series_ratio(tilted, gamma / alpha, chi, chi * ax);
      return check_range(v, "fpt/z_upward");
    }

    case Process::yhat_downward: {
      // Yhat = 1/Z falls from start = a to barrier = x:
      //   (x/a)^(gamma/alpha) I_gamma(gamma/alpha; chi) / I_gamma(gamma/alpha; chi a/x).
      if (!(query.psi.mean() > 0.0))
        raise(errc::meaningless, "fpt/yhat: requires positive mean (no killing)");
      if (!(query.barrier > 0.0 && query.barrier <= query.start))
        raise(errc::meaningless, "fpt/yhat: needs 0 < barrier <= start");
      double gamma = query.psi.phi(query.q);
      if (gamma == 0.0) return 1.0;
      double ratio = query.start / query.barrier;  // a / x
      SeriesEvaluator tilted(query.psi.esscher(gamma), alpha, options);
      double v = std::pow(ratio, -gamma / alpha) *
                 series_ratio(tilted, gamma / alpha, chi, chi * ratio);
      return check_range(v, "fpt/yhat_downward");
    }

    case Process::u_to_zero: {
      // E_x[e^(-q T_0^U)] = N(q/chi; chi x^alpha).
      if (!(query.start > 0.0)) raise(errc::meaningless, "fpt/u_to_zero: needs x > 0");
      if (!(query.psi.mean() < 0.0))
        raise(errc::meaningless, "fpt/u_to_zero: requires negative mean");
      ZeroPassageFunction n(query.psi, alpha, options);
      double v = n.eval(query.q / chi, chi * std::pow(query.start, alpha));
      return check_range(v, "fpt/u_to_zero");
    }
  }
  raise(errc::unsupported, "fpt: unknown process tag");
}

std::function<double(double)> harmonic_transfer(const LevyExponent& psi,
                                                std::function<double(double)> h, double q) {
  double gamma = psi.phi(q);
  return [gamma, h = std::move(h)](double x) { return std::pow(x, gamma) * h(x); };
}

}  // namespace fpt
}  // namespace ssou
