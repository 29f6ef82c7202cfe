#include "core/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <thread>
#include <vector>

#include "core/common.hpp"
#include "core/quadrature.hpp"
#include "core/series.hpp"

namespace ssou {
namespace sim {

namespace {

constexpr double kKillFloorLog = -27.631021115928547;  // log(1e-12)

// ---------------------------------------------------------------------------
// Deterministic, platform-independent RNG: xoshiro256++ seeded by splitmix64,
// Box-Muller normals with a one-deep cache, Poisson by inversion (means here
// stay well below ~10).

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class Rng {
public:
  Rng(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t st = seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1));
    for (auto& word : s_) word = splitmix64(st);
  }

  std::uint64_t next() {
    std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  double uniform() {  // (0,1)
    return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
  }

  double normal() {
    if (has_cache_) {
      has_cache_ = false;
      return cache_;
    }
    double u1 = uniform();
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double c = std::cos(6.283185307179586477 * u2);
    double s = std::sin(6.283185307179586477 * u2);
    cache_ = r * s;
    has_cache_ = true;
    return r * c;
  }

  int poisson(double mean) {
    double p = std::exp(-mean);
    double cum = p;
    double u = uniform();
    int k = 0;
    while (u > cum && k < 1000) {
      ++k;
      p *= mean / k;
      cum += p;
    }
    return k;
  }

private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  std::uint64_t s_[4];
  bool has_cache_ = false;
  double cache_ = 0.0;
};

// ---------------------------------------------------------------------------
// Increment sampler for the driving Levy process on the dt grid.

struct JumpTable {
  double rate = 0.0;        // intensity of jumps with magnitude above the cutoff
  double mean_mag = 0.0;    // int_eps^inf w h(w) dw
  double sigma_small = 0.0; // sqrt(int_0^eps w^2 h(w) dw)
  double tail_decay = 1.0;  // h(w) ~ const e^(-tail_decay w) past the table
  std::vector<double> quantiles;

  double sample(Rng& rng) const {
    double pos = rng.uniform() * (quantiles.size() - 1);
    auto i = static_cast<std::size_t>(pos);
    if (i >= quantiles.size() - 2) {
      // Top probability bin: the quantile spacing is too coarse for linear
      // interpolation, but the density is exponential there to high accuracy.
      return quantiles[quantiles.size() - 2] - std::log(rng.uniform()) / tail_decay;
    }
    double frac = pos - static_cast<double>(i);
    return quantiles[i] + frac * (quantiles[i + 1] - quantiles[i]);
  }
};

// Jump magnitude density of the pochhammer family (jumps are -w, w > 0):
// h(w) = (alpha-1)/Gamma(2-alpha) e^(-(alpha+gamma-1) w) / (1-e^-w)^(alpha+1),
// the normalization that reproduces the closed-form exponent through the
// Levy-Khintchine integral.
JumpTable build_pochhammer_table(double alpha, double gamma, double cutoff) {
  JumpTable table;
  const double c = (alpha - 1.0) / std::tgamma(2.0 - alpha);
  const double decay = alpha + gamma - 1.0;
  table.tail_decay = decay;
  auto h = [=](double w) {
    return c * std::exp(-decay * w) / std::pow(-std::expm1(-w), alpha + 1.0);
  };

  // sigma of the Gaussianized small jumps: int_0^eps w^2 h(w) dw, mapped to
  // an exponential variable to absorb the w^(1-alpha) blow-up at 0.
  {
    auto integrand = [&](double y) {
      double w = cutoff * std::exp(-y);
      return w * w * h(w) * w;
    };
    QuadResult q = integrate_to_infinity(integrand, 0.0, 1e-14, 1e-10);
    table.sigma_small = std::sqrt(q.value);
  }

  // Log-spaced magnitude grid above the cutoff; Simpson per cell for the
  // cumulative mass and the mean magnitude.
  const double w_max = (40.0 + alpha * std::abs(std::log(cutoff))) / decay + 5.0;
  const int cells = 6000;
  const double step = std::log(w_max / cutoff) / cells;
  std::vector<double> grid(cells + 1), cum(cells + 1, 0.0);
  for (int j = 0; j <= cells; ++j) grid[j] = cutoff * std::exp(step * j);
  double mean_acc = 0.0;
  for (int j = 0; j < cells; ++j) {
    double a = grid[j], b = grid[j + 1], m = 0.5 * (a + b);
    double width = b - a;
    cum[j + 1] = cum[j] + width / 6.0 * (h(a) + 4.0 * h(m) + h(b));
    mean_acc += width / 6.0 * (a * h(a) + 4.0 * m * h(m) + b * h(b));
  }
  table.rate = cum.back();
  table.mean_mag = mean_acc;

  const int m_quant = 4096;
  table.quantiles.resize(m_quant + 1);
  table.quantiles.front() = grid.front();
  table.quantiles.back() = grid.back();
  int cell = 0;
  for (int i = 1; i < m_quant; ++i) {
    double target = table.rate * i / m_quant;
    while (cell < cells - 1 && cum[cell + 1] < target) ++cell;
    double frac = (target - cum[cell]) / std::max(cum[cell + 1] - cum[cell], 1e-300);
    table.quantiles[i] = grid[cell] + frac * (grid[cell + 1] - grid[cell]);
  }
  return table;
}

class Stepper {
public:
  Stepper(const LevyExponent& psi, const PathConfig& cfg) : dt_(cfg.dt) {
    switch (psi.kind()) {
      case ExponentKind::brownian_drift:
        drift_ = psi.brownian_b();
        sigma_ = psi.brownian_sigma();
        break;
      case ExponentKind::pochhammer: {
        if (!(cfg.jump_cutoff > 0.0))
          raise(errc::domain, "simulate: jump_cutoff must be positive");
        table_ = build_pochhammer_table(psi.pochhammer_alpha(), psi.pochhammer_gamma(),
                                        cfg.jump_cutoff);
        jumps_ = true;
        drift_ = psi.mean() + table_.mean_mag;  // compensate uncompensated big jumps
        sigma_ = table_.sigma_small;
        bridge_sigma_ = 0.0;  // bridge correction only for the diffusive kind
        break;
      }
      default:
        raise(errc::unsupported, "simulate: no sampler for this exponent kind");
    }
    if (!jumps_) bridge_sigma_ = sigma_;
    sqrt_dt_ = std::sqrt(dt_);
    jump_mean_per_step_ = jumps_ ? table_.rate * dt_ : 0.0;
  }

  double step(Rng& rng) const {
    double inc = drift_ * dt_ + sigma_ * sqrt_dt_ * rng.normal();
    if (jumps_) {
      int n = rng.poisson(jump_mean_per_step_);
      for (int j = 0; j < n; ++j) inc -= table_.sample(rng);
    }
    return inc;
  }

  // Effective diffusion coefficient for within-cell crossing corrections;
  // zero disables the correction.
  double bridge_sigma() const { return bridge_sigma_; }

private:
  double dt_;
  double sqrt_dt_ = 0.0;
  double drift_ = 0.0;
  double sigma_ = 0.0;
  double bridge_sigma_ = 0.0;
  bool jumps_ = false;
  double jump_mean_per_step_ = 0.0;
  JumpTable table_;
};

// ---------------------------------------------------------------------------

double e_chi(double t, double chi) { return chi == 0.0 ? t : std::expm1(chi * t) / chi; }
double v_chi(double s, double chi) { return chi == 0.0 ? s : std::log1p(chi * s) / chi; }

struct PathValue {
  double value = 0.0;
  bool hit = false;
  FptSample sample;
};

// Ordered reduction over per-path values: estimates are bit-identical for a
// given (seed, config) regardless of the thread count.
template <class PerPath>
McResult run_paths(long n_paths, std::uint64_t seed, const PerPath& per_path,
                   const SampleSink& sink = nullptr) {
  if (n_paths < 1) raise(errc::domain, "run_paths: n_paths must be positive");
  std::vector<PathValue> values(static_cast<std::size_t>(n_paths));
  long n_threads = std::min<long>(static_cast<long>(std::thread::hardware_concurrency()),
                                  std::max<long>(1, n_paths / 4096));
  n_threads = std::max<long>(1, std::min<long>(n_threads, 16));
  auto work = [&](long begin, long end) {
    for (long i = begin; i < end; ++i) {
      Rng rng(seed, static_cast<std::uint64_t>(i));
      values[static_cast<std::size_t>(i)] = per_path(rng);
    }
  };
  if (n_threads == 1) {
    work(0, n_paths);
  } else {
    std::vector<std::thread> pool;
    long chunk = (n_paths + n_threads - 1) / n_threads;
    for (long t = 0; t < n_threads; ++t) {
      long begin = t * chunk;
      long end = std::min(n_paths, begin + chunk);
      if (begin >= end) break;
      pool.emplace_back(work, begin, end);
    }
    for (auto& th : pool) th.join();
  }

  McResult out;
  out.n_paths = n_paths;
  KahanSum mean_acc;
  for (long i = 0; i < n_paths; ++i) {
    mean_acc.add(values[static_cast<std::size_t>(i)].value);
    if (values[static_cast<std::size_t>(i)].hit) ++out.n_hits;
    if (sink) sink(i, values[static_cast<std::size_t>(i)].sample);
  }
  out.estimate = mean_acc.value() / static_cast<double>(n_paths);
  KahanSum var_acc;
  for (long i = 0; i < n_paths; ++i) {
    double d = values[static_cast<std::size_t>(i)].value - out.estimate;
    var_acc.add(d * d);
  }
  if (n_paths > 1)
    out.std_error = std::sqrt(var_acc.value() / (n_paths - 1.0) / static_cast<double>(n_paths));
  return out;
}

// Crossing state for a moving barrier expressed as a threshold on xi given
// the accumulated exponential functional V.
struct Crossing {
  bool hit = false;
  bool absorbed = false;  // xi fell through the kill floor
  double u = 0.0;         // xi-time of the crossing
  double V = 0.0;         // integral value at the crossing (or at termination)
  double u_end = 0.0;
  double V_end = 0.0;
};

// Marches xi until the barrier is crossed, the path is absorbed, or the
// horizon runs out. `barrier(V)` returns the xi threshold. Within-cell
// crossing uses the linear interpolation of xi - B; a Brownian-bridge
// acceptance fills in crossings the grid misses when the driver is diffusive.
template <class BarrierFn>
Crossing march(const Stepper& stepper, const PathConfig& cfg, Rng& rng, double xi0,
               BarrierFn barrier, double alpha, bool stop_on_absorb,
               double absorb_floor_log = kKillFloorLog) {
  Crossing out;
  const double du = cfg.dt;
  const long max_steps = static_cast<long>(cfg.horizon / du);
  double xi = xi0;
  double V = 0.0;
  double exp_axi = std::exp(alpha * xi);
  double gap = barrier(0.0) - xi;
  if (gap <= 0.0) {
    out.hit = true;
    return out;
  }
  const double sigma_b = stepper.bridge_sigma();
  const double bridge_denom = sigma_b > 0.0 ? 2.0 / (sigma_b * sigma_b * du) : 0.0;
  for (long i = 0; i < max_steps; ++i) {
    double xi_next = xi + stepper.step(rng);
    double exp_next = std::exp(alpha * xi_next);
    double V_next = V + 0.5 * du * (exp_axi + exp_next);
    double gap_next = barrier(V_next) - xi_next;
    if (gap_next <= 0.0) {
      double frac = gap / std::max(gap - gap_next, 1e-300);
      out.hit = true;
      out.u = du * static_cast<double>(i) + frac * du;
      out.V = V + frac * (V_next - V);
      return out;
    }
    if (bridge_denom > 0.0) {
      double expo = -bridge_denom * gap * gap_next;
      if (expo > -30.0 && rng.uniform() < std::exp(expo)) {
        out.hit = true;
        out.u = du * (static_cast<double>(i) + 0.5);
        out.V = 0.5 * (V + V_next);
        return out;
      }
    }
    xi = xi_next;
    V = V_next;
    exp_axi = exp_next;
    gap = gap_next;
    if (stop_on_absorb && xi < absorb_floor_log) {
      out.absorbed = true;
      out.u_end = du * static_cast<double>(i + 1);
      out.V_end = V;
      return out;
    }
  }
  out.u_end = du * static_cast<double>(max_steps);
  out.V_end = V;
  return out;
}

// Marches until V reaches s_target; returns xi at the crossing cell, linearly
// interpolated plus the conditional bridge fluctuation (the interpolated value
// alone under-disperses and biases convex functionals by O(dt)). With
// best_effort the terminal xi stands in when the horizon runs out first (the
// exponential clock has a heavy-tailed inverse for drift-free drivers, and
// such paths sit deep below zero where the functionals of interest are flat);
// otherwise raises errc::grid_exhausted.
double xi_at_integral_time(const Stepper& stepper, const PathConfig& cfg, Rng& rng, double xi0,
                           double alpha, double s_target, bool* absorbed,
                           bool best_effort = true) {
  const double du = cfg.dt;
  const long max_steps = static_cast<long>(cfg.horizon / du);
  double xi = xi0;
  double V = 0.0;
  double exp_axi = std::exp(alpha * xi);
  for (long i = 0; i < max_steps; ++i) {
    double xi_next = xi + stepper.step(rng);
    double exp_next = std::exp(alpha * xi_next);
    double V_next = V + 0.5 * du * (exp_axi + exp_next);
    if (V_next >= s_target) {
      double frac = (s_target - V) / std::max(V_next - V, 1e-300);
      double value = xi + frac * (xi_next - xi);
      double sigma_b = stepper.bridge_sigma();
      if (sigma_b > 0.0)
        value += sigma_b * std::sqrt(frac * (1.0 - frac) * du) * rng.normal();
      return value;
    }
    xi = xi_next;
    V = V_next;
    exp_axi = exp_next;
    if (absorbed && xi < kKillFloorLog) {
      *absorbed = true;
      return xi;
    }
  }
  if (best_effort) return xi;
  raise(errc::grid_exhausted, "simulate: horizon reached before the requested clock time");
}

McResult require_hits(McResult r) {
  if (r.n_hits < 100)
    raise(errc::insufficient_hits,
          "simulate: fewer than 100 paths reached the barrier (" + std::to_string(r.n_hits) +
              " of " + std::to_string(r.n_paths) + ")");
  return r;
}

}  // namespace

McResult estimate_levy_mean(const LevyExponent& psi, const PathConfig& cfg, double t,
                            long n_paths) {
  Stepper stepper(psi, cfg);
  long steps = static_cast<long>(std::llround(t / cfg.dt));
  return run_paths(n_paths, cfg.seed, [&](Rng& rng) {
    double xi = 0.0;
    for (long i = 0; i < steps; ++i) xi += stepper.step(rng);
    PathValue v;
    v.value = xi;
    v.hit = true;
    return v;
  });
}

McResult estimate_exp_moment(const LevyExponent& psi, const PathConfig& cfg, double u, double t,
                             long n_paths) {
  Stepper stepper(psi, cfg);
  long steps = static_cast<long>(std::llround(t / cfg.dt));
  return run_paths(n_paths, cfg.seed, [&](Rng& rng) {
    double xi = 0.0;
    for (long i = 0; i < steps; ++i) xi += stepper.step(rng);
    PathValue v;
    v.value = std::exp(u * xi);
    v.hit = true;
    return v;
  });
}

McResult estimate_fpt_laplace(const LevyExponent& psi, const PathConfig& cfg,
                              fpt::Process process, double start, double barrier, double q,
                              long n_paths, const SampleSink& sink) {
  if (n_paths < 1000) raise(errc::domain, "estimate_fpt_laplace: need n_paths >= 1000");
  if (q < 0.0) raise(errc::domain, "estimate_fpt_laplace: q must be nonnegative");
  Stepper stepper(psi, cfg);
  const double alpha = cfg.alpha;
  const double chi = cfg.alpha * cfg.lambda;
  const bool absorbing = psi.mean() < 0.0;

  switch (process) {
    case fpt::Process::u_upward: {
      // Clock-grid detection: U is rebuilt on the uniform grid t_j = j dt and
      // compared against the fixed level; the within-cell correction runs on
      // the underlying xi bridge against the line log(a) + lambda t.
      if (!(start > 0.0 && start <= barrier))
        raise(errc::meaningless, "u_upward: needs 0 < start <= barrier");
      const double log_a = std::log(barrier);
      const double xi0 = std::log(start);
      const double dt = cfg.dt;
      const double du = cfg.dt;
      const long max_steps = static_cast<long>(cfg.horizon / du);
      const double sigma_b = stepper.bridge_sigma();
      return require_hits(run_paths(n_paths, cfg.seed, [&](Rng& rng) {
        PathValue out;
        double xi = xi0;
        double V = 0.0;
        double exp_axi = std::exp(alpha * xi);
        long j = 1;  // next clock index
        double u_prev_star = 0.0;
        double gap_prev = log_a - xi0;
        if (gap_prev <= 0.0) {  // start == barrier
          out.value = 1.0;
          out.hit = true;
          out.sample = FptSample{0.0, 0.0, false};
          return out;
        }
        for (long i = 0; i < max_steps; ++i) {
          double xi_next = xi + stepper.step(rng);
          double exp_next = std::exp(alpha * xi_next);
          double V_next = V + 0.5 * du * (exp_axi + exp_next);
          // Clock points that land inside this xi cell. For the diffusive
          // kind the value at an interior point is drawn from the bridge
          // conditioned on the previous interior sample and the right
          // endpoint: plain interpolation would under-disperse U and bias
          // the detection late.
          double cell_u = du * static_cast<double>(i);
          double anchor_u = cell_u;
          double anchor_xi = xi;
          for (;;) {
            double t_j = dt * static_cast<double>(j);
            double s_j = e_chi(t_j, chi);
            if (s_j > V_next) break;
            double frac = (s_j - V) / std::max(V_next - V, 1e-300);
            double u_star = cell_u + frac * du;
            double right_u = cell_u + du;
            double span = std::max(right_u - anchor_u, 1e-300);
            double w = (u_star - anchor_u) / span;
            double xi_star = anchor_xi + w * (xi_next - anchor_xi);
            if (sigma_b > 0.0) {
              double var = w * (right_u - u_star) * sigma_b * sigma_b;
              if (var > 0.0) xi_star += std::sqrt(var) * rng.normal();
            }
            double gap = log_a + cfg.lambda * t_j - xi_star;  // U >= a iff gap <= 0
            if (gap <= 0.0) {
              double cross = gap_prev / std::max(gap_prev - gap, 1e-300);
              double t_hit = t_j - dt + cross * dt;
              out.hit = true;
              out.value = std::exp(-q * t_hit);
              out.sample = FptSample{t_hit, 0.0, false};
              return out;
            }
            if (sigma_b > 0.0) {
              double d_int = std::max(u_star - u_prev_star, 1e-300);
              double expo = -2.0 * gap_prev * gap / (sigma_b * sigma_b * d_int);
              if (expo > -30.0 && rng.uniform() < std::exp(expo)) {
                double t_hit = t_j - 0.5 * dt;
                out.hit = true;
                out.value = std::exp(-q * t_hit);
                out.sample = FptSample{t_hit, 0.0, false};
                return out;
              }
            }
            gap_prev = gap;
            u_prev_star = u_star;
            anchor_u = u_star;
            anchor_xi = xi_star;
            ++j;
          }
          xi = xi_next;
          V = V_next;
          exp_axi = exp_next;
          if (absorbing && xi < kKillFloorLog) break;
        }
        out.value = 0.0;
        out.sample = FptSample{0.0, 0.0, true};
        return out;
      }, sink));
    }

    case fpt::Process::x_moving_boundary: {
      if (!(start > 0.0 && start <= barrier))
        raise(errc::meaningless, "x_moving_boundary: needs 0 < start <= barrier");
      const double log_a = std::log(barrier);
      const double xi0 = std::log(start);
      auto barrier_fn = [&](double V) { return log_a + std::log1p(chi * V) / alpha; };
      const double a_exp = q / chi;
      return require_hits(run_paths(n_paths, cfg.seed, [&](Rng& rng) {
        Crossing c = march(stepper, cfg, rng, xi0, barrier_fn, alpha, absorbing);
        PathValue out;
        if (c.hit) {
          out.hit = true;
          out.value = std::pow(1.0 + chi * c.V, -a_exp);
          out.sample = FptSample{c.V, 0.0, false};
        } else {
          out.sample = FptSample{0.0, 0.0, true};
        }
        return out;
      }, sink));
    }

    case fpt::Process::u_delta_clock: {
      if (!(start > 0.0 && start <= barrier))
        raise(errc::meaningless, "u_delta_clock: needs 0 < start <= barrier");
      const double log_a = std::log(barrier);
      const double xi0 = std::log(start);
      auto barrier_fn = [&](double V) { return log_a + std::log1p(chi * V) / alpha; };
      return require_hits(run_paths(n_paths, cfg.seed, [&](Rng& rng) {
        Crossing c = march(stepper, cfg, rng, xi0, barrier_fn, alpha, absorbing);
        PathValue out;
        if (c.hit) {
          out.hit = true;
          out.value = std::exp(-q * c.u);
          out.sample = FptSample{c.u, 0.0, false};
        } else {
          out.sample = FptSample{0.0, 0.0, true};
        }
        return out;
      }, sink));
    }

    case fpt::Process::z_upward:
    case fpt::Process::yhat_downward: {
      const bool is_z = process == fpt::Process::z_upward;
      if (is_z && !(start > 0.0 && start <= barrier))
        raise(errc::meaningless, "z_upward: needs 0 < start <= barrier");
      if (!is_z && !(barrier > 0.0 && barrier <= start))
        raise(errc::meaningless, "yhat_downward: needs 0 < barrier <= start");
      // Z_0 = start with x = 1/start; Yhat_0 = start with x = start. In both
      // cases beta = chi * x and the crossing is a moving xi threshold.
      const double x_param = is_z ? 1.0 / start : start;
      const double beta = chi * x_param;
      auto barrier_fn = [&](double V) {
        double body = x_param + beta * V;
        return is_z ? std::log(barrier * body) / alpha : std::log(body / barrier) / alpha;
      };
      return require_hits(run_paths(n_paths, cfg.seed, [&](Rng& rng) {
        Crossing c = march(stepper, cfg, rng, 0.0, barrier_fn, alpha, absorbing);
        PathValue out;
        if (c.hit) {
          out.hit = true;
          out.value = std::exp(-q * c.u);
          out.sample = FptSample{c.u, 0.0, false};
        } else {
          out.sample = FptSample{0.0, 0.0, true};
        }
        return out;
      }, sink));
    }

    case fpt::Process::u_to_zero: {
      if (!(psi.mean() < 0.0))
        raise(errc::meaningless, "u_to_zero: requires a negative-mean driver");
      if (!(start > 0.0)) raise(errc::meaningless, "u_to_zero: needs start > 0");
      const double xi0 = std::log(start);
      const double a_exp = q / chi;
      const double tail_scale = 2.0 / (alpha * std::abs(psi.mean()));
      const double du = cfg.dt;
      const long max_steps = static_cast<long>(cfg.horizon / du);
      return require_hits(run_paths(n_paths, cfg.seed, [&](Rng& rng) {
        double xi = xi0;
        double V = 0.0;
        double exp_axi = std::exp(alpha * xi);
        bool saturated = false;
        for (long i = 0; i < max_steps; ++i) {
          double xi_next = xi + stepper.step(rng);
          double exp_next = std::exp(alpha * xi_next);
          V += 0.5 * du * (exp_axi + exp_next);
          xi = xi_next;
          exp_axi = exp_next;
          if (exp_axi * tail_scale < 1e-8 * (1.0 / chi + V)) {
            saturated = true;
            break;
          }
        }
        PathValue out;
        out.hit = saturated;
        out.value = std::pow(1.0 + chi * V, -a_exp);
        out.sample = FptSample{v_chi(V, chi), 0.0, !saturated};
        return out;
      }, sink));
    }
  }
  raise(errc::unsupported, "estimate_fpt_laplace: unknown process");
}

McResult estimate_martingale(const LevyExponent& psi, const PathConfig& cfg, double q, double x0,
                             double t, long n_paths) {
  // t is the self-similar clock: the averaged quantity is
  // (1+chi t)^(-q/chi) I(q; (1+chi t)^(-1/alpha) X_t) with X at its own time.
  Stepper stepper(psi, cfg);
  const double chi = cfg.alpha * cfg.lambda;
  const double a = q / chi;
  const double xi0 = std::log(x0);
  SeriesEvaluator series(psi, cfg.alpha);
  const double discount = std::pow(1.0 + chi * t, -a);
  const double prefactor = std::pow(chi, a);
  const double arg_scale = chi / (1.0 + chi * t);  // chi * ((1+chi t)^(-1/alpha) X)^alpha
  return run_paths(n_paths, cfg.seed, [&](Rng& rng) {
    double xi_t = xi_at_integral_time(stepper, cfg, rng, xi0, cfg.alpha, t, nullptr);
    double x_alpha = std::exp(cfg.alpha * xi_t);
    PathValue v;
    v.value = discount * prefactor * series.eval_q(a, arg_scale * x_alpha).value;
    v.hit = true;
    return v;
  });
}

McResult estimate_u_moment(const LevyExponent& psi, const PathConfig& cfg, double x0,
                           double power, double t, long n_paths) {
  Stepper stepper(psi, cfg);
  const double chi = cfg.alpha * cfg.lambda;
  const double s_target = e_chi(t, chi);
  const double xi0 = std::log(x0);
  const double damp = std::exp(-cfg.lambda * t);
  return run_paths(n_paths, cfg.seed, [&](Rng& rng) {
    double xi_t = xi_at_integral_time(stepper, cfg, rng, xi0, cfg.alpha, s_target, nullptr);
    PathValue v;
    v.value = std::pow(damp * std::exp(xi_t), power);
    v.hit = true;
    return v;
  });
}

McResult estimate_x_moment(const LevyExponent& psi, const PathConfig& cfg, double x0,
                           double power, double s, long n_paths) {
  Stepper stepper(psi, cfg);
  const double xi0 = std::log(x0);
  return run_paths(n_paths, cfg.seed, [&](Rng& rng) {
    double xi_t = xi_at_integral_time(stepper, cfg, rng, xi0, cfg.alpha, s, nullptr);
    PathValue v;
    v.value = std::pow(std::exp(xi_t), power);
    v.hit = true;
    return v;
  });
}

McResult estimate_tilted(const LevyExponent& psi, const PathConfig& cfg, double theta, double x0,
                         double t, const std::function<double(double)>& f, long n_paths) {
  LevyExponent tilted = psi.esscher(theta);
  Stepper stepper(tilted, cfg);
  const double chi = cfg.alpha * cfg.lambda;
  const double s_target = e_chi(t, chi);
  const double xi0 = std::log(x0);
  const double damp = std::exp(-cfg.lambda * t);
  return run_paths(n_paths, cfg.seed, [&](Rng& rng) {
    double xi_t = xi_at_integral_time(stepper, cfg, rng, xi0, cfg.alpha, s_target, nullptr);
    PathValue v;
    v.value = f(damp * std::exp(xi_t));
    v.hit = true;
    return v;
  });
}

McResult estimate_weighted(const LevyExponent& psi, const PathConfig& cfg, double theta,
                           double x0, double t, const std::function<double(double)>& f,
                           long n_paths) {
  Stepper stepper(psi, cfg);
  const double chi = cfg.alpha * cfg.lambda;
  const double s_target = e_chi(t, chi);
  const double xi0 = std::log(x0);
  const double damp = std::exp(-cfg.lambda * t);
  const double growth = std::exp(cfg.lambda * theta * t);
  return run_paths(n_paths, cfg.seed, [&](Rng& rng) {
    bool absorbed = false;
    double xi_t = xi_at_integral_time(stepper, cfg, rng, xi0, cfg.alpha, s_target, &absorbed);
    PathValue v;
    v.hit = !absorbed;
    if (!absorbed) {
      double u_t = damp * std::exp(xi_t);
      v.value = f(u_t) * std::pow(u_t / x0, theta) * growth;
    }
    return v;
  });
}

// ---------------------------------------------------------------------------
// Single-path identity gaps.

namespace {

struct PathArrays {
  std::vector<double> xi;
  std::vector<double> V;  // cell-wise integral of exp(alpha xi)
};

// Integral of e^(a xi) across one cell under linear-in-cell xi: the geometric
// rule du (e^y1 - e^y0)/(y1 - y0). Exact for linear exponents, so the
// convexity bias of the trapezoid at sharp dips drops out of the pathwise
// identity checks.
double exp_cell(double y0, double y1, double du) {
  double d = y1 - y0;
  if (std::abs(d) < 1e-8) return 0.5 * du * (std::exp(y0) + std::exp(y1));
  return du * (std::exp(y1) - std::exp(y0)) / d;
}

PathArrays build_path(const LevyExponent& psi, const PathConfig& cfg, double xi0) {
  Stepper stepper(psi, cfg);
  Rng rng(cfg.seed, 0);
  long n = static_cast<long>(cfg.horizon / cfg.dt);
  PathArrays p;
  p.xi.resize(n + 1);
  p.V.resize(n + 1);
  p.xi[0] = xi0;
  p.V[0] = 0.0;
  for (long i = 0; i < n; ++i) {
    p.xi[i + 1] = p.xi[i] + stepper.step(rng);
    p.V[i + 1] =
        p.V[i] + exp_cell(cfg.alpha * p.xi[i], cfg.alpha * p.xi[i + 1], cfg.dt);
  }
  return p;
}

// U on its own clock, recovered from (xi, V): U(tau) =
// (1 + chi s)^(-1/alpha) exp(xi(A(s))), s = e_chi(tau).
double u_at(const PathArrays& p, const PathConfig& cfg, double chi, double tau, long* cursor) {
  double s = e_chi(tau, chi);
  long i = *cursor;
  long n = static_cast<long>(p.V.size()) - 1;
  while (i < n && p.V[i + 1] < s) ++i;
  *cursor = i;
  if (i >= n) raise(errc::grid_exhausted, "u_at: clock time beyond the simulated horizon");
  double frac = (s - p.V[i]) / std::max(p.V[i + 1] - p.V[i], 1e-300);
  double xi_s = p.xi[i] + frac * (p.xi[i + 1] - p.xi[i]);
  return std::pow(1.0 + chi * s, -1.0 / cfg.alpha) * std::exp(xi_s);
}

}  // namespace

namespace {
// int Z du across one cell: geometric rule on the exponential factor, the
// slowly varying denominator at the cell midpoint.
double z_cell(const PathArrays& p, double alpha, double x0, double beta, long i, double du) {
  double num = exp_cell(alpha * p.xi[i], alpha * p.xi[i + 1], du);
  return num / (x0 + beta * 0.5 * (p.V[i] + p.V[i + 1]));
}
}  // namespace

std::vector<double> levy_ou_path(const LevyExponent& psi, const PathConfig& cfg, double x0,
                                 double beta) {
  PathArrays p = build_path(psi, cfg, 0.0);
  long n = static_cast<long>(p.xi.size()) - 1;
  std::vector<double> y(n + 1);
  double integral = 0.0;  // int e^(-alpha xi) du
  y[0] = x0;
  for (long i = 0; i < n; ++i) {
    integral += exp_cell(-cfg.alpha * p.xi[i], -cfg.alpha * p.xi[i + 1], cfg.dt);
    y[i + 1] = std::exp(cfg.alpha * p.xi[i + 1]) * (x0 + beta * integral);
  }
  return y;
}

std::vector<double> z_path(const LevyExponent& psi, const PathConfig& cfg, double x0,
                           double beta) {
  PathArrays p = build_path(psi, cfg, 0.0);
  long n = static_cast<long>(p.xi.size()) - 1;
  std::vector<double> z(n + 1);
  for (long i = 0; i <= n; ++i)
    z[i] = std::exp(cfg.alpha * p.xi[i]) / (x0 + beta * p.V[i]);
  return z;
}

double z_time_change_gap(const LevyExponent& psi, const PathConfig& cfg, double x0) {
  const double chi = cfg.alpha * cfg.lambda;
  PathArrays p = build_path(psi, cfg, 0.0);
  long n = static_cast<long>(p.xi.size()) - 1;
  // Z from the exponential-functional expression, Z_0 = 1/x0.
  std::vector<double> z(n + 1), nabla(n + 1, 0.0);
  const double beta = chi * x0;
  for (long i = 0; i <= n; ++i)
    z[i] = std::exp(cfg.alpha * p.xi[i]) / (x0 + beta * p.V[i]);
  for (long i = 0; i < n; ++i)
    nabla[i + 1] = nabla[i] + z_cell(p, cfg.alpha, x0, beta, i, cfg.dt);

  double max_gap = 0.0;
  double max_slope = 1e-12;
  long cursor = 0;
  for (long i = 1; i <= n; ++i) {
    double tau = x0 * nabla[i];  // the inverse of the Delta clock
    if (e_chi(tau, chi) >= p.V[n - 1]) break;  // stay inside the inversion range
    double u_val = u_at(p, cfg, chi, tau, &cursor);
    double composed = std::pow(u_val, cfg.alpha) / x0;
    max_gap = std::max(max_gap, std::abs(composed - z[i]));
    if (i < n) max_slope = std::max(max_slope, std::abs(z[i + 1] - z[i]) / cfg.dt);
  }
  return max_gap / max_slope;  // equivalent time offset; compare against k dt
}

double delta_nabla_gap(const LevyExponent& psi, const PathConfig& cfg, double x0) {
  const double chi = cfg.alpha * cfg.lambda;
  PathArrays p = build_path(psi, cfg, 0.0);
  long n = static_cast<long>(p.xi.size()) - 1;
  std::vector<double> z(n + 1), nabla(n + 1, 0.0);
  const double beta = chi * x0;
  for (long i = 0; i <= n; ++i)
    z[i] = std::exp(cfg.alpha * p.xi[i]) / (x0 + beta * p.V[i]);
  for (long i = 0; i < n; ++i)
    nabla[i + 1] = nabla[i] + z_cell(p, cfg.alpha, x0, beta, i, cfg.dt);

  // Delta on the U clock: geometric cells of U^-alpha on a refined grid, so
  // that sharp dips of the path do not leak quadrature bias into the gap.
  const double dq = 0.25 * cfg.dt;
  double tau_max = std::min(x0 * nabla[n], v_chi(p.V[n - 1], chi));
  long m = static_cast<long>(tau_max / dq);
  std::vector<double> delta(m + 1, 0.0);
  long cursor = 0;
  double prev_log = -cfg.alpha * std::log(u_at(p, cfg, chi, 0.0, &cursor));
  for (long j = 1; j <= m; ++j) {
    double cur_log = -cfg.alpha * std::log(u_at(p, cfg, chi, dq * j, &cursor));
    delta[j] = delta[j - 1] + exp_cell(prev_log, cur_log, dq);
    prev_log = cur_log;
  }

  double max_gap = 0.0;
  for (long i = 1; i <= n; ++i) {
    double tau = x0 * nabla[i];
    if (tau >= tau_max) break;
    double pos = tau / dq;
    long j = static_cast<long>(pos);
    if (j + 1 > m) break;
    double frac = pos - static_cast<double>(j);
    double delta_tau = delta[j] + frac * (delta[j + 1] - delta[j]);
    max_gap = std::max(max_gap, std::abs(delta_tau - cfg.dt * static_cast<double>(i)));
  }
  return max_gap;
}

double yhat_identity_gap(const LevyExponent& psi, const PathConfig& cfg, double x0) {
  const double chi = cfg.alpha * cfg.lambda;
  PathArrays p = build_path(psi, cfg, 0.0);
  long n = static_cast<long>(p.xi.size()) - 1;
  const double beta = chi * x0;
  double worst = 0.0;
  for (long i = 0; i <= n; ++i) {
    double z = std::exp(cfg.alpha * p.xi[i]) / (x0 + beta * p.V[i]);
    // Yhat built from the dual driver -xi: exp(alpha(-xi))(x0 + beta int exp(-alpha(-xi)))
    double yhat = std::exp(-cfg.alpha * p.xi[i]) * (x0 + beta * p.V[i]);
    worst = std::max(worst, std::abs(yhat * z - 1.0));
  }
  return worst;
}

double lambda_zero_gap(const LevyExponent& psi, const PathConfig& cfg, double x0) {
  PathConfig flat = cfg;
  flat.lambda = 0.0;
  PathArrays p = build_path(psi, flat, std::log(x0));
  long n = static_cast<long>(p.xi.size()) - 1;
  double worst = 0.0;
  long cursor = 0;
  for (long j = 1; j <= n / 2; ++j) {
    double tau = flat.dt * static_cast<double>(j);
    if (tau >= p.V[n - 1]) break;
    double u_val = u_at(p, flat, 0.0, tau, &cursor);
    // X at its own clock s = tau, read off the same inversion
    long i = 0;
    while (i < n && p.V[i + 1] < tau) ++i;
    double frac = (tau - p.V[i]) / std::max(p.V[i + 1] - p.V[i], 1e-300);
    double x_val = std::exp(p.xi[i] + frac * (p.xi[i + 1] - p.xi[i]));
    worst = std::max(worst, std::abs(u_val - x_val));
  }
  return worst;
}

}  // namespace sim
}  // namespace ssou
