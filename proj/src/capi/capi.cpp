#include "ssou/ssou.h"

#include <cstring>
#include <new>
#include <string>

#include "core/common.hpp"
#include "core/fpt_formulas.hpp"
#include "core/gamma_transform.hpp"
#include "core/levy_exponent.hpp"
#include "core/series.hpp"
#include "core/simulator.hpp"
#include "core/special_functions.hpp"
#include "core/stable_wh.hpp"
#include "core/validation.hpp"

namespace {

thread_local std::string g_last_error;

ssou_status map_code(ssou::errc code) {
  using ssou::errc;
  switch (code) {
    case errc::domain: return SSOU_ERR_DOMAIN;
    case errc::no_root: return SSOU_ERR_NO_ROOT;
    case errc::bracket: return SSOU_ERR_BRACKET;
    case errc::zero_denominator: return SSOU_ERR_ZERO_DENOMINATOR;
    case errc::truncation: return SSOU_ERR_TRUNCATION;
    case errc::product_divergence: return SSOU_ERR_PRODUCT_DIVERGENCE;
    case errc::quadrature: return SSOU_ERR_QUADRATURE;
    case errc::non_finite: return SSOU_ERR_NON_FINITE;
    case errc::branch: return SSOU_ERR_BRANCH;
    case errc::unsupported: return SSOU_ERR_UNSUPPORTED;
    case errc::grid_exhausted: return SSOU_ERR_GRID_EXHAUSTED;
    case errc::insufficient_hits: return SSOU_ERR_INSUFFICIENT_HITS;
    case errc::meaningless: return SSOU_ERR_MEANINGLESS;
    case errc::config: return SSOU_ERR_CONFIG;
  }
  return SSOU_ERR_INTERNAL;
}

template <class Fn>
ssou_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return SSOU_OK;
  } catch (const ssou::Error& e) {
    g_last_error = e.what();
    return map_code(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "allocation failure";
    return SSOU_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return SSOU_ERR_INTERNAL;
  }
}

ssou_status invalid(const char* what) {
  g_last_error = what;
  return SSOU_ERR_INVALID_ARGUMENT;
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

ssou::SeriesOptions to_core(const ssou_series_options* options) {
  ssou::SeriesOptions core;
  if (options) {
    core.rtol = options->rtol;
    core.max_terms = options->max_terms;
  }
  return core;
}

ssou::sim::PathConfig to_core(const ssou_path_config* config) {
  ssou::sim::PathConfig core;
  if (config) {
    core.alpha = config->alpha;
    core.lambda = config->lambda;
    core.dt = config->dt;
    core.horizon = config->horizon;
    core.seed = config->seed;
    core.scheme = config->scheme == SSOU_SCHEME_JUMP_ADAPTED ? ssou::sim::Scheme::jump_adapted
                                                             : ssou::sim::Scheme::euler;
    core.jump_cutoff = config->jump_cutoff;
  }
  return core;
}

void fill(ssou_mc_result* out, const ssou::sim::McResult& r) {
  out->estimate = r.estimate;
  out->std_error = r.std_error;
  out->n_paths = r.n_paths;
  out->n_hits = r.n_hits;
}

}  // namespace

struct ssou_exponent {
  ssou::LevyExponent impl;
};
struct ssou_gamma_transform {
  ssou::GammaTransform impl;
};
struct ssou_stable {
  ssou::stable::StableParams impl;
};

extern "C" {

const char* ssou_status_name(ssou_status status) {
  switch (status) {
    case SSOU_OK: return "ok";
    case SSOU_ERR_DOMAIN: return "domain";
    case SSOU_ERR_NO_ROOT: return "no_root";
    case SSOU_ERR_BRACKET: return "bracket";
    case SSOU_ERR_ZERO_DENOMINATOR: return "zero_denominator";
    case SSOU_ERR_TRUNCATION: return "truncation";
    case SSOU_ERR_PRODUCT_DIVERGENCE: return "product_divergence";
    case SSOU_ERR_QUADRATURE: return "quadrature";
    case SSOU_ERR_NON_FINITE: return "non_finite";
    case SSOU_ERR_BRANCH: return "branch";
    case SSOU_ERR_UNSUPPORTED: return "unsupported";
    case SSOU_ERR_GRID_EXHAUSTED: return "grid_exhausted";
    case SSOU_ERR_INSUFFICIENT_HITS: return "insufficient_hits";
    case SSOU_ERR_MEANINGLESS: return "meaningless";
    case SSOU_ERR_CONFIG: return "config";
    case SSOU_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case SSOU_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* ssou_last_error(void) { return g_last_error.c_str(); }

void ssou_string_free(char* text) { delete[] text; }

/* ---- exponents ---- */

ssou_status ssou_exponent_brownian(double b, double sigma, ssou_exponent** out) {
  if (!out) return invalid("null out");
  return guarded([&] { *out = new ssou_exponent{ssou::LevyExponent::brownian(b, sigma)}; });
}

ssou_status ssou_exponent_pochhammer(double alpha, double gamma, ssou_exponent** out) {
  if (!out) return invalid("null out");
  return guarded([&] { *out = new ssou_exponent{ssou::LevyExponent::pochhammer(alpha, gamma)}; });
}

ssou_status ssou_exponent_tabulated(double b, double sigma,
                                    double (*jump_density)(double, void*), void* ctx,
                                    ssou_exponent** out) {
  if (!out || !jump_density) return invalid("null out or density");
  return guarded([&] {
    auto density = [jump_density, ctx](double r) { return jump_density(r, ctx); };
    *out = new ssou_exponent{ssou::LevyExponent::tabulated(b, sigma, density)};
  });
}

ssou_status ssou_exponent_from_json(const char* json, ssou_exponent** out) {
  if (!out || !json) return invalid("null out or json");
  return guarded([&] { *out = new ssou_exponent{ssou::LevyExponent::from_json(json)}; });
}

ssou_status ssou_exponent_esscher(const ssou_exponent* psi, double gamma, ssou_exponent** out) {
  if (!psi || !out) return invalid("null exponent or out");
  return guarded([&] { *out = new ssou_exponent{psi->impl.esscher(gamma)}; });
}

void ssou_exponent_free(ssou_exponent* psi) { delete psi; }

ssou_status ssou_exponent_eval(const ssou_exponent* psi, double u, double* out) {
  if (!psi || !out) return invalid("null exponent or out");
  return guarded([&] { *out = psi->impl(u); });
}

ssou_status ssou_exponent_mean(const ssou_exponent* psi, double* out) {
  if (!psi || !out) return invalid("null exponent or out");
  return guarded([&] { *out = psi->impl.mean(); });
}

ssou_status ssou_exponent_theta0(const ssou_exponent* psi, double* out) {
  if (!psi || !out) return invalid("null exponent or out");
  return guarded([&] { *out = psi->impl.theta0(); });
}

ssou_status ssou_exponent_cramer_theta(const ssou_exponent* psi, double* out) {
  if (!psi || !out) return invalid("null exponent or out");
  return guarded([&] {
    auto theta = psi->impl.cramer_theta();
    if (!theta) ssou::raise(ssou::errc::no_root, "cramer_theta: mean is nonnegative");
    *out = *theta;
  });
}

ssou_status ssou_exponent_phi(const ssou_exponent* psi, double q, double* out) {
  if (!psi || !out) return invalid("null exponent or out");
  return guarded([&] { *out = psi->impl.phi(q); });
}

/* ---- series ---- */

void ssou_series_options_init(ssou_series_options* options) {
  if (!options) return;
  ssou::SeriesOptions d;
  options->rtol = d.rtol;
  options->max_terms = d.max_terms;
}

ssou_status ssou_series_coeff(const ssou_exponent* psi, double alpha, int n, double* out) {
  if (!psi || !out) return invalid("null exponent or out");
  return guarded([&] {
    ssou::SeriesOptions o;
    o.max_terms = std::max(n + 1, o.max_terms);
    ssou::SeriesEvaluator series(psi->impl, alpha, o);
    *out = series.coeff(n);
  });
}

ssou_status ssou_series_eval(const ssou_exponent* psi, double alpha, double z_re, double z_im,
                             const ssou_series_options* options, ssou_series_result* out) {
  if (!psi || !out) return invalid("null exponent or out");
  return guarded([&] {
    ssou::SeriesEvaluator series(psi->impl, alpha, to_core(options));
    auto v = series.eval(std::complex<double>(z_re, z_im));
    *out = {v.value.real(), v.value.imag(), v.terms_used, v.tail_bound};
  });
}

ssou_status ssou_series_eval_q(const ssou_exponent* psi, double alpha, double q, double z_re,
                               double z_im, const ssou_series_options* options,
                               ssou_series_result* out) {
  if (!psi || !out) return invalid("null exponent or out");
  return guarded([&] {
    ssou::SeriesEvaluator series(psi->impl, alpha, to_core(options));
    auto v = series.eval_q(q, std::complex<double>(z_re, z_im));
    *out = {v.value.real(), v.value.imag(), v.terms_used, v.tail_bound};
  });
}

ssou_status ssou_series_c_theta(const ssou_exponent* psi, double alpha, double* out) {
  if (!psi || !out) return invalid("null exponent or out");
  return guarded([&] { *out = ssou::c_theta_auto(psi->impl, alpha); });
}

ssou_status ssou_series_c_theta_growth(const ssou_exponent* psi, double alpha, double beta,
                                       double a_beta, double* out) {
  if (!psi || !out) return invalid("null exponent or out");
  return guarded([&] { *out = ssou::c_theta(psi->impl, alpha, beta, a_beta); });
}

ssou_status ssou_series_n(const ssou_exponent* psi, double alpha, double q, double x,
                          double* out) {
  if (!psi || !out) return invalid("null exponent or out");
  return guarded([&] {
    ssou::ZeroPassageFunction n(psi->impl, alpha);
    *out = n.eval(q, std::pow(x, alpha));
  });
}

/* ---- gamma transform ---- */

ssou_status ssou_gamma_transform_create(double q, double chi, double alpha, int gl_order,
                                        ssou_gamma_transform** out) {
  if (!out) return invalid("null out");
  return guarded([&] {
    ssou::GammaTransform::Options options;
    if (gl_order > 0) options.gauss_laguerre_order = gl_order;
    *out = new ssou_gamma_transform{ssou::GammaTransform(q, chi, alpha, options)};
  });
}

void ssou_gamma_transform_free(ssou_gamma_transform* transform) { delete transform; }

ssou_status ssou_gamma_transform_apply(const ssou_gamma_transform* transform,
                                       double (*f)(double, void*), void* ctx, double x,
                                       double* out) {
  if (!transform || !f || !out) return invalid("null transform, f or out");
  return guarded([&] {
    *out = transform->impl.apply([f, ctx](double y) { return f(y, ctx); }, x);
  });
}

ssou_status ssou_gamma_transform_time_space(const ssou_gamma_transform* transform,
                                            double (*f)(double, void*), void* ctx, double t,
                                            double x, double* out) {
  if (!transform || !f || !out) return invalid("null transform, f or out");
  return guarded([&] {
    *out = transform->impl.time_space_invariant([f, ctx](double y) { return f(y, ctx); }, t, x);
  });
}

/* ---- stable ---- */

ssou_status ssou_stable_create(double alpha, double beta, int k, int l, ssou_stable** out) {
  if (!out) return invalid("null out");
  return guarded([&] { *out = new ssou_stable{ssou::stable::StableParams(alpha, beta, k, l)}; });
}

ssou_status ssou_stable_from_class(double alpha, int k, int l, ssou_stable** out) {
  if (!out) return invalid("null out");
  return guarded(
      [&] { *out = new ssou_stable{ssou::stable::StableParams::from_class(alpha, k, l)}; });
}

void ssou_stable_free(ssou_stable* params) { delete params; }

ssou_status ssou_stable_rho(const ssou_stable* params, double* out) {
  if (!params || !out) return invalid("null params or out");
  *out = params->impl.rho;
  return SSOU_OK;
}

ssou_status ssou_stable_char_exponent(const ssou_stable* params, double z_re, double z_im,
                                      double* out_re, double* out_im) {
  if (!params || !out_re || !out_im) return invalid("null params or out");
  return guarded([&] {
    auto v = ssou::stable::char_exponent(params->impl, {z_re, z_im});
    *out_re = v.real();
    *out_im = v.imag();
  });
}

ssou_status ssou_stable_psi_plus(const ssou_stable* params, double z_re, double z_im,
                                 double* out_re, double* out_im) {
  if (!params || !out_re || !out_im) return invalid("null params or out");
  return guarded([&] {
    auto v = ssou::stable::psi_plus(params->impl, {z_re, z_im});
    *out_re = v.real();
    *out_im = v.imag();
  });
}

ssou_status ssou_stable_psi_minus(const ssou_stable* params, double z_re, double z_im,
                                  double* out_re, double* out_im) {
  if (!params || !out_re || !out_im) return invalid("null params or out");
  return guarded([&] {
    auto v = ssou::stable::psi_minus(params->impl, {z_re, z_im});
    *out_re = v.real();
    *out_im = v.imag();
  });
}

ssou_status ssou_stable_ou_fpt_double_laplace(const ssou_stable* params, int side_above, double q,
                                              double delta, double p, double chi, double* out) {
  if (!params || !out) return invalid("null params or out");
  return guarded([&] {
    auto side = side_above ? ssou::stable::PassageSide::above : ssou::stable::PassageSide::below;
    *out = ssou::stable::ou_fpt_double_laplace(params->impl, side, q, delta, p, chi);
  });
}

/* ---- special functions ---- */

ssou_status ssou_bessel_i(double nu, double x, double* out) {
  if (!out) return invalid("null out");
  return guarded([&] { *out = ssou::special::bessel_i(nu, x); });
}
ssou_status ssou_kummer_phi(double a, double b, double x, double* out) {
  if (!out) return invalid("null out");
  return guarded([&] { *out = ssou::special::kummer_phi(a, b, x); });
}
ssou_status ssou_tricomi_u(double a, double b, double x, double* out) {
  if (!out) return invalid("null out");
  return guarded([&] { *out = ssou::special::tricomi_u(a, b, x); });
}
ssou_status ssou_prabhakar_ml(double alpha, double beta, double q, double z, double* out) {
  if (!out) return invalid("null out");
  return guarded([&] { *out = ssou::special::prabhakar_ml(alpha, beta, q, z); });
}
ssou_status ssou_ml_q_series(double alpha, double beta, double q, double z, double* out) {
  if (!out) return invalid("null out");
  return guarded([&] { *out = ssou::special::ml_q_series(alpha, beta, q, z); });
}

/* ---- fpt ---- */

namespace {
ssou::fpt::Process to_core(ssou_fpt_process process) {
  switch (process) {
    case SSOU_FPT_U_UPWARD: return ssou::fpt::Process::u_upward;
    case SSOU_FPT_X_MOVING_BOUNDARY: return ssou::fpt::Process::x_moving_boundary;
    case SSOU_FPT_U_DELTA_CLOCK: return ssou::fpt::Process::u_delta_clock;
    case SSOU_FPT_Z_UPWARD: return ssou::fpt::Process::z_upward;
    case SSOU_FPT_YHAT_DOWNWARD: return ssou::fpt::Process::yhat_downward;
    case SSOU_FPT_U_TO_ZERO: return ssou::fpt::Process::u_to_zero;
  }
  ssou::raise(ssou::errc::unsupported, "unknown fpt process tag");
}
}  // namespace

ssou_status ssou_fpt_laplace(const ssou_exponent* psi, ssou_fpt_process process, double alpha,
                             double lambda, double q, double start, double barrier, double* out) {
  if (!psi || !out) return invalid("null exponent or out");
  return guarded([&] {
    ssou::fpt::Query query{to_core(process), psi->impl, alpha, lambda, q, start, barrier};
    *out = ssou::fpt::laplace(query);
  });
}

/* ---- simulator ---- */

void ssou_path_config_init(ssou_path_config* config) {
  if (!config) return;
  ssou::sim::PathConfig d;
  config->alpha = d.alpha;
  config->lambda = d.lambda;
  config->dt = d.dt;
  config->horizon = d.horizon;
  config->seed = d.seed;
  config->scheme = SSOU_SCHEME_EULER;
  config->jump_cutoff = d.jump_cutoff;
}

ssou_status ssou_sim_fpt_laplace(const ssou_exponent* psi, const ssou_path_config* config,
                                 ssou_fpt_process process, double start, double barrier, double q,
                                 long n_paths, ssou_sample_sink sink, void* sink_ctx,
                                 ssou_mc_result* out) {
  if (!psi || !config || !out) return invalid("null exponent, config or out");
  return guarded([&] {
    ssou::sim::SampleSink core_sink;
    if (sink) {
      core_sink = [sink, sink_ctx](long index, const ssou::sim::FptSample& sample) {
        sink(index, sample.hit_time, sample.overshoot, sample.killed ? 1 : 0, sink_ctx);
      };
    }
    auto r = ssou::sim::estimate_fpt_laplace(psi->impl, to_core(config), to_core(process), start,
                                             barrier, q, n_paths, core_sink);
    fill(out, r);
  });
}

ssou_status ssou_sim_exp_moment(const ssou_exponent* psi, const ssou_path_config* config,
                                double u, double t, long n_paths, ssou_mc_result* out) {
  if (!psi || !config || !out) return invalid("null exponent, config or out");
  return guarded([&] {
    fill(out, ssou::sim::estimate_exp_moment(psi->impl, to_core(config), u, t, n_paths));
  });
}

ssou_status ssou_sim_levy_mean(const ssou_exponent* psi, const ssou_path_config* config, double t,
                               long n_paths, ssou_mc_result* out) {
  if (!psi || !config || !out) return invalid("null exponent, config or out");
  return guarded(
      [&] { fill(out, ssou::sim::estimate_levy_mean(psi->impl, to_core(config), t, n_paths)); });
}

ssou_status ssou_sim_martingale(const ssou_exponent* psi, const ssou_path_config* config,
                                double q, double x0, double t, long n_paths,
                                ssou_mc_result* out) {
  if (!psi || !config || !out) return invalid("null exponent, config or out");
  return guarded([&] {
    fill(out, ssou::sim::estimate_martingale(psi->impl, to_core(config), q, x0, t, n_paths));
  });
}

/* ---- validation ---- */

ssou_status ssou_validate_run(const char* suite, uint64_t seed, double path_scale,
                              char** report_json, int* out_n_failed) {
  if (!suite || !report_json) return invalid("null suite or report");
  return guarded([&] {
    ssou::validation::Options options;
    options.seed = seed;
    if (path_scale > 0.0) options.path_scale = path_scale;
    auto rows = ssou::validation::run_suite(suite, options);
    int failed = 0;
    for (const auto& r : rows)
      if (r.scored && !r.pass) ++failed;
    *report_json = dup_string(ssou::validation::to_json(rows));
    if (out_n_failed) *out_n_failed = failed;
  });
}

ssou_status ssou_validate_suites(char*** out_names, size_t* out_count) {
  if (!out_names || !out_count) return invalid("null out");
  return guarded([&] {
    auto names = ssou::validation::suite_names();
    char** list = new char*[names.size()];
    for (std::size_t i = 0; i < names.size(); ++i) list[i] = dup_string(names[i]);
    *out_names = list;
    *out_count = names.size();
  });
}

void ssou_string_list_free(char** names, size_t count) {
  if (!names) return;
  for (size_t i = 0; i < count; ++i) delete[] names[i];
  delete[] names;
}

}  // extern "C"
