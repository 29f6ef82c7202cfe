/* ssou - semigroup transforms and first-passage laws for self-similar
 * Markov processes and their Ornstein-Uhlenbeck images.
 *
 * C interface to the shared library. All objects are opaque handles created
 * and destroyed here; every function returns a status code and writes results
 * through out-parameters. Handles are immutable after creation and safe to
 * share across threads. On failure, ssou_last_error() returns a thread-local
 * message describing what went wrong.
 */

#ifndef SSOU_H
#define SSOU_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SSOU_API __declspec(dllexport)
#else
#define SSOU_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ssou_status {
  SSOU_OK = 0,
  SSOU_ERR_DOMAIN = 1,
  SSOU_ERR_NO_ROOT = 2,
  SSOU_ERR_BRACKET = 3,
  SSOU_ERR_ZERO_DENOMINATOR = 4,
  SSOU_ERR_TRUNCATION = 5,
  SSOU_ERR_PRODUCT_DIVERGENCE = 6,
  SSOU_ERR_QUADRATURE = 7,
  SSOU_ERR_NON_FINITE = 8,
  SSOU_ERR_BRANCH = 9,
  SSOU_ERR_UNSUPPORTED = 10,
  SSOU_ERR_GRID_EXHAUSTED = 11,
  SSOU_ERR_INSUFFICIENT_HITS = 12,
  SSOU_ERR_MEANINGLESS = 13,
  SSOU_ERR_CONFIG = 14,
  SSOU_ERR_INVALID_ARGUMENT = 15,
  SSOU_ERR_INTERNAL = 16,
} ssou_status;

SSOU_API const char* ssou_status_name(ssou_status status);
SSOU_API const char* ssou_last_error(void);
SSOU_API void ssou_string_free(char* text);

/* ------------------------------------------------------------------ */
/* Laplace exponents of spectrally negative Levy processes.            */

typedef struct ssou_exponent ssou_exponent;

/* psi(u) = b u + (sigma/2) u^2 */
SSOU_API ssou_status ssou_exponent_brownian(double b, double sigma, ssou_exponent** out);
/* psi(u) = ((u+gamma-1)_alpha - (gamma-1)_alpha)/alpha, alpha in (1,2) */
SSOU_API ssou_status ssou_exponent_pochhammer(double alpha, double gamma, ssou_exponent** out);
/* Levy-Khintchine form with a caller-supplied jump density on r < 0. */
SSOU_API ssou_status ssou_exponent_tabulated(double b, double sigma,
                                             double (*jump_density)(double r, void* ctx),
                                             void* ctx, ssou_exponent** out);
/* JSON descriptor: {"kind":"brownian","b":...,"sigma":...} etc. */
SSOU_API ssou_status ssou_exponent_from_json(const char* json, ssou_exponent** out);
SSOU_API ssou_status ssou_exponent_esscher(const ssou_exponent* psi, double gamma,
                                           ssou_exponent** out);
SSOU_API void ssou_exponent_free(ssou_exponent* psi);

SSOU_API ssou_status ssou_exponent_eval(const ssou_exponent* psi, double u, double* out);
SSOU_API ssou_status ssou_exponent_mean(const ssou_exponent* psi, double* out);
SSOU_API ssou_status ssou_exponent_theta0(const ssou_exponent* psi, double* out);
/* SSOU_ERR_NO_ROOT when the mean is nonnegative. */
SSOU_API ssou_status ssou_exponent_cramer_theta(const ssou_exponent* psi, double* out);
/* Inverse of psi on [theta0, inf). */
SSOU_API ssou_status ssou_exponent_phi(const ssou_exponent* psi, double q, double* out);

/* ------------------------------------------------------------------ */
/* Power series I(z) = sum a_n z^n, a_n = 1/prod psi(alpha k), and the */
/* Pochhammer-weighted variant I(q; z) = sum a_n (q)_n z^n.            */

typedef struct ssou_series_options {
  double rtol;    /* relative truncation tolerance (default 1e-10) */
  int max_terms;  /* cap before SSOU_ERR_TRUNCATION (default 400)  */
} ssou_series_options;

typedef struct ssou_series_result {
  double value;
  double value_imag;
  int terms_used;
  double tail_bound;
} ssou_series_result;

SSOU_API void ssou_series_options_init(ssou_series_options* options);

SSOU_API ssou_status ssou_series_coeff(const ssou_exponent* psi, double alpha, int n,
                                       double* out);
SSOU_API ssou_status ssou_series_eval(const ssou_exponent* psi, double alpha, double z_re,
                                      double z_im, const ssou_series_options* options,
                                      ssou_series_result* out);
SSOU_API ssou_status ssou_series_eval_q(const ssou_exponent* psi, double alpha, double q,
                                        double z_re, double z_im,
                                        const ssou_series_options* options,
                                        ssou_series_result* out);
/* Normalizing constant of I(x^alpha) ~ C x^theta I_theta(x^alpha); the tail
 * growth psi(u) ~ a_beta u^(1+beta) is inferred from the exponent kind. */
SSOU_API ssou_status ssou_series_c_theta(const ssou_exponent* psi, double alpha, double* out);
SSOU_API ssou_status ssou_series_c_theta_growth(const ssou_exponent* psi, double alpha,
                                                double beta, double a_beta, double* out);
/* N(q; x^alpha) = I(q; x^alpha)
 *   - C x^theta (Gamma(q+theta/alpha)/Gamma(q)) I_theta(q + theta/alpha; x^alpha). */
SSOU_API ssou_status ssou_series_n(const ssou_exponent* psi, double alpha, double q, double x,
                                   double* out);

/* ------------------------------------------------------------------ */
/* Gamma mixing transform.                                             */

typedef struct ssou_gamma_transform ssou_gamma_transform;

/* gl_order <= 0 selects the default quadrature policy. */
SSOU_API ssou_status ssou_gamma_transform_create(double q, double chi, double alpha, int gl_order,
                                                 ssou_gamma_transform** out);
SSOU_API void ssou_gamma_transform_free(ssou_gamma_transform* transform);
SSOU_API ssou_status ssou_gamma_transform_apply(const ssou_gamma_transform* transform,
                                                double (*f)(double y, void* ctx), void* ctx,
                                                double x, double* out);
SSOU_API ssou_status ssou_gamma_transform_time_space(const ssou_gamma_transform* transform,
                                                     double (*f)(double y, void* ctx), void* ctx,
                                                     double t, double x, double* out);

/* ------------------------------------------------------------------ */
/* Stable processes: positivity parameter, Wiener-Hopf factors and the */
/* double Laplace transforms of the OU passage pair at 0.              */

typedef struct ssou_stable ssou_stable;

SSOU_API ssou_status ssou_stable_create(double alpha, double beta, int k, int l,
                                        ssou_stable** out);
/* Derives the skewness from rho = l/alpha - k. */
SSOU_API ssou_status ssou_stable_from_class(double alpha, int k, int l, ssou_stable** out);
SSOU_API void ssou_stable_free(ssou_stable* params);
SSOU_API ssou_status ssou_stable_rho(const ssou_stable* params, double* out);
SSOU_API ssou_status ssou_stable_char_exponent(const ssou_stable* params, double z_re,
                                               double z_im, double* out_re, double* out_im);
SSOU_API ssou_status ssou_stable_psi_plus(const ssou_stable* params, double z_re, double z_im,
                                          double* out_re, double* out_im);
SSOU_API ssou_status ssou_stable_psi_minus(const ssou_stable* params, double z_re, double z_im,
                                           double* out_re, double* out_im);
/* side_above = 0: passage from below (Psi+ ratio); 1: from above. */
SSOU_API ssou_status ssou_stable_ou_fpt_double_laplace(const ssou_stable* params, int side_above,
                                                       double q, double delta, double p,
                                                       double chi, double* out);

/* ------------------------------------------------------------------ */
/* Reference special functions.                                        */

SSOU_API ssou_status ssou_bessel_i(double nu, double x, double* out);
SSOU_API ssou_status ssou_kummer_phi(double a, double b, double x, double* out);
SSOU_API ssou_status ssou_tricomi_u(double a, double b, double x, double* out);
SSOU_API ssou_status ssou_prabhakar_ml(double alpha, double beta, double q, double z,
                                       double* out);
SSOU_API ssou_status ssou_ml_q_series(double alpha, double beta, double q, double z, double* out);

/* ------------------------------------------------------------------ */
/* Closed-form first-passage Laplace transforms and their Monte Carlo  */
/* estimators.                                                         */

typedef enum ssou_fpt_process {
  SSOU_FPT_U_UPWARD = 0,
  SSOU_FPT_X_MOVING_BOUNDARY = 1,
  SSOU_FPT_U_DELTA_CLOCK = 2,
  SSOU_FPT_Z_UPWARD = 3,
  SSOU_FPT_YHAT_DOWNWARD = 4,
  SSOU_FPT_U_TO_ZERO = 5,
} ssou_fpt_process;

SSOU_API ssou_status ssou_fpt_laplace(const ssou_exponent* psi, ssou_fpt_process process,
                                      double alpha, double lambda, double q, double start,
                                      double barrier, double* out);

typedef enum ssou_scheme {
  SSOU_SCHEME_EULER = 0,
  SSOU_SCHEME_JUMP_ADAPTED = 1,
} ssou_scheme;

typedef struct ssou_path_config {
  double alpha;
  double lambda;
  double dt;
  double horizon;      /* driving-process time horizon */
  uint64_t seed;
  int scheme;          /* ssou_scheme */
  double jump_cutoff;  /* small-jump Gaussianization threshold */
} ssou_path_config;

SSOU_API void ssou_path_config_init(ssou_path_config* config);

typedef struct ssou_mc_result {
  double estimate;
  double std_error;
  long n_paths;
  long n_hits;
} ssou_mc_result;

/* Per-path first-passage sample, forwarded in path order when a sink is
 * supplied: the hit time in the process's own clock, the overshoot (zero for
 * the spectrally negative upward crossings handled here) and the killed flag
 * (absorbed at 0 or horizon exceeded). */
typedef void (*ssou_sample_sink)(long path_index, double hit_time, double overshoot, int killed,
                                 void* ctx);

SSOU_API ssou_status ssou_sim_fpt_laplace(const ssou_exponent* psi,
                                          const ssou_path_config* config,
                                          ssou_fpt_process process, double start, double barrier,
                                          double q, long n_paths, ssou_sample_sink sink,
                                          void* sink_ctx, ssou_mc_result* out);
SSOU_API ssou_status ssou_sim_exp_moment(const ssou_exponent* psi,
                                         const ssou_path_config* config, double u, double t,
                                         long n_paths, ssou_mc_result* out);
SSOU_API ssou_status ssou_sim_levy_mean(const ssou_exponent* psi, const ssou_path_config* config,
                                        double t, long n_paths, ssou_mc_result* out);
SSOU_API ssou_status ssou_sim_martingale(const ssou_exponent* psi,
                                         const ssou_path_config* config, double q, double x0,
                                         double t, long n_paths, ssou_mc_result* out);

/* ------------------------------------------------------------------ */
/* Cross-module identity suites. Returns the report as a JSON array of */
/* rows {suite, identity, params, metric, observed, tolerance, pass};  */
/* *out_n_failed counts scored failures. Free the string with          */
/* ssou_string_free. path_scale scales Monte Carlo sizes (1 = full).   */

SSOU_API ssou_status ssou_validate_run(const char* suite, uint64_t seed, double path_scale,
                                       char** report_json, int* out_n_failed);
SSOU_API ssou_status ssou_validate_suites(char*** out_names, size_t* out_count);
SSOU_API void ssou_string_list_free(char** names, size_t count);

#ifdef __cplusplus
}
#endif

#endif /* SSOU_H */
