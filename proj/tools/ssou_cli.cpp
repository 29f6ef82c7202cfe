// Command-line front end for the ssou shared library. Everything here goes
// through the C API in ssou/ssou.h; the JSON config format mirrors the
// library's constructors.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ssou/ssou.h"

namespace {

using nlohmann::json;

constexpr int kExitValidation = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct CliError {
  int code;
  std::string message;
};

[[noreturn]] void fail_config(const std::string& message) {
  throw CliError{kExitConfig, message};
}

[[noreturn]] void fail_status(ssou_status status, const std::string& where) {
  std::string message = where + ": " + ssou_status_name(status);
  const char* detail = ssou_last_error();
  if (detail && *detail) message += std::string(" (") + detail + ")";
  throw CliError{status == SSOU_ERR_CONFIG || status == SSOU_ERR_INVALID_ARGUMENT
                     ? kExitConfig
                     : kExitNumerical,
                 message};
}

void check(ssou_status status, const std::string& where) {
  if (status != SSOU_OK) fail_status(status, where);
}

json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail_config("cannot open config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    fail_config(std::string("config parse error: ") + e.what());
  }
  return j;
}

struct ExponentHandle {
  ssou_exponent* ptr = nullptr;
  ~ExponentHandle() { ssou_exponent_free(ptr); }
};

void make_exponent(const json& cfg, ExponentHandle& out) {
  if (!cfg.contains("exponent")) fail_config("config needs an \"exponent\" object");
  check(ssou_exponent_from_json(cfg["exponent"].dump().c_str(), &out.ptr), "exponent");
}

std::vector<double> grid_from(const json& j, const char* key) {
  if (!j.contains(key)) fail_config(std::string("config needs \"") + key + "\"");
  const json& g = j[key];
  std::vector<double> out;
  if (g.is_array()) {
    for (const auto& v : g) out.push_back(v.get<double>());
  } else if (g.is_object()) {
    double from = g.at("from").get<double>();
    double to = g.at("to").get<double>();
    int count = g.at("count").get<int>();
    if (count < 1) fail_config("grid count must be positive");
    for (int i = 0; i < count; ++i)
      out.push_back(count == 1 ? from : from + (to - from) * i / (count - 1.0));
  } else {
    out.push_back(g.get<double>());
  }
  if (out.empty()) fail_config(std::string("empty grid for \"") + key + "\"");
  return out;
}

// Deterministic table formatting shared by the csv and json writers.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  static std::string cell(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
  }

  void write(std::ostream& os, const std::string& format) const {
    if (format == "json") {
      json out = json::array();
      for (const auto& row : rows) {
        json obj;
        for (std::size_t i = 0; i < header.size(); ++i) obj[header[i]] = row[i];
        out.push_back(obj);
      }
      os << out.dump(2) << "\n";
      return;
    }
    for (std::size_t i = 0; i < header.size(); ++i)
      os << header[i] << (i + 1 < header.size() ? "," : "\n");
    for (const auto& row : rows)
      for (std::size_t i = 0; i < row.size(); ++i) os << row[i] << (i + 1 < row.size() ? "," : "\n");
  }
};

void emit(const Table& table, const std::string& out_path, const std::string& format) {
  if (out_path.empty()) {
    table.write(std::cout, format);
    return;
  }
  std::ofstream os(out_path);
  if (!os) fail_config("cannot open output file: " + out_path);
  table.write(os, format);
}

ssou_fpt_process parse_process(const std::string& name) {
  if (name == "u_upward" || name == "U") return SSOU_FPT_U_UPWARD;
  if (name == "x_moving_boundary" || name == "X") return SSOU_FPT_X_MOVING_BOUNDARY;
  if (name == "u_delta_clock") return SSOU_FPT_U_DELTA_CLOCK;
  if (name == "z_upward" || name == "Z") return SSOU_FPT_Z_UPWARD;
  if (name == "yhat_downward" || name == "Yhat") return SSOU_FPT_YHAT_DOWNWARD;
  if (name == "u_to_zero") return SSOU_FPT_U_TO_ZERO;
  fail_config("unknown process \"" + name + "\"");
}

// ---------------------------------------------------------------------------

int cmd_eval_series(const json& cfg, const std::string& out_path, const std::string& format) {
  ExponentHandle psi;
  make_exponent(cfg, psi);
  double alpha = cfg.at("alpha").get<double>();
  bool with_q = cfg.contains("q") && !cfg["q"].is_null();
  double q = with_q ? cfg["q"].get<double>() : 0.0;
  ssou_series_options options;
  ssou_series_options_init(&options);
  if (cfg.contains("rtol")) options.rtol = cfg["rtol"].get<double>();
  if (cfg.contains("max_terms")) options.max_terms = cfg["max_terms"].get<int>();

  Table table;
  table.header = {"z", "value", "terms", "tail_bound"};
  for (double z : grid_from(cfg, "z")) {
    ssou_series_result r;
    ssou_status status = with_q
                             ? ssou_series_eval_q(psi.ptr, alpha, q, z, 0.0, &options, &r)
                             : ssou_series_eval(psi.ptr, alpha, z, 0.0, &options, &r);
    check(status, "eval-series");
    table.rows.push_back({Table::cell(z), Table::cell(r.value),
                          std::to_string(r.terms_used), Table::cell(r.tail_bound)});
  }
  emit(table, out_path, format);
  return 0;
}

struct SeriesCallbackCtx {
  ssou_exponent* psi;
  double alpha;
};

double invariant_callback(double y, void* ctx) {
  auto* c = static_cast<SeriesCallbackCtx*>(ctx);
  ssou_series_result r;
  ssou_status status = ssou_series_eval(c->psi, c->alpha, std::pow(y, c->alpha), 0.0, nullptr, &r);
  if (status != SSOU_OK) return NAN;  // surfaces as SSOU_ERR_NON_FINITE in the transform
  return r.value;
}

int cmd_gamma_transform(const json& cfg, const std::string& out_path, const std::string& format) {
  ExponentHandle psi;
  make_exponent(cfg, psi);
  double alpha = cfg.at("alpha").get<double>();
  double chi = cfg.contains("chi") ? cfg["chi"].get<double>()
                                   : alpha * cfg.at("lambda").get<double>();
  double q = cfg.at("q").get<double>();
  int order = cfg.contains("order") ? cfg["order"].get<int>() : 0;

  ssou_gamma_transform* transform = nullptr;
  check(ssou_gamma_transform_create(q, chi, alpha, order, &transform), "gamma-transform");
  std::unique_ptr<ssou_gamma_transform, decltype(&ssou_gamma_transform_free)> guard(
      transform, &ssou_gamma_transform_free);

  SeriesCallbackCtx ctx{psi.ptr, alpha};
  Table table;
  table.header = {"x", "transform", "series_route", "rel_diff"};
  for (double x : grid_from(cfg, "x")) {
    double via_transform = 0.0;
    check(ssou_gamma_transform_apply(transform, invariant_callback, &ctx, x, &via_transform),
          "gamma-transform apply");
    ssou_series_result r;
    check(ssou_series_eval_q(psi.ptr, alpha, q / chi, chi * std::pow(x, alpha), 0.0, nullptr, &r),
          "gamma-transform series route");
    double series_route = std::pow(chi, q / chi) * r.value;
    double rel = std::abs(via_transform - series_route) / std::abs(series_route);
    table.rows.push_back({Table::cell(x), Table::cell(via_transform),
                          Table::cell(series_route), Table::cell(rel)});
  }
  emit(table, out_path, format);
  return 0;
}

int cmd_wiener_hopf(const json& cfg, const std::string& out_path, const std::string& format) {
  double alpha = cfg.at("alpha").get<double>();
  int k = cfg.at("k").get<int>();
  int l = cfg.at("l").get<int>();
  ssou_stable* params = nullptr;
  if (cfg.contains("beta"))
    check(ssou_stable_create(alpha, cfg["beta"].get<double>(), k, l, &params), "wiener-hopf");
  else
    check(ssou_stable_from_class(alpha, k, l, &params), "wiener-hopf");
  std::unique_ptr<ssou_stable, decltype(&ssou_stable_free)> guard(params, &ssou_stable_free);

  Table table;
  table.header = {"re", "im", "psi_plus_re", "psi_plus_im", "psi_minus_re", "psi_minus_im",
                  "factorization_residual"};
  if (!cfg.contains("points") || !cfg["points"].is_array())
    fail_config("wiener-hopf config needs a \"points\" array of {re, im}");
  for (const auto& pt : cfg["points"]) {
    double re = pt.at("re").get<double>();
    double im = pt.at("im").get<double>();
    double pre, pim, mre, mim, cre, cim;
    check(ssou_stable_psi_plus(params, re, im, &pre, &pim), "psi_plus");
    check(ssou_stable_psi_minus(params, re, im, &mre, &mim), "psi_minus");
    check(ssou_stable_char_exponent(params, re, im, &cre, &cim), "char_exponent");
    // residual of Psi- Psi+ (1 - Psi) - 1
    double pr = mre * pre - mim * pim;
    double pi = mre * pim + mim * pre;
    double or_ = pr * (1.0 - cre) - pi * (-cim);
    double oi = pr * (-cim) + pi * (1.0 - cre);
    double residual = std::hypot(or_ - 1.0, oi);
    table.rows.push_back({Table::cell(re), Table::cell(im), Table::cell(pre), Table::cell(pim),
                          Table::cell(mre), Table::cell(mim), Table::cell(residual)});
  }
  emit(table, out_path, format);
  return 0;
}

int cmd_fpt(const json& cfg, const std::string& out_path, const std::string& format) {
  ExponentHandle psi;
  make_exponent(cfg, psi);
  double alpha = cfg.at("alpha").get<double>();
  double lambda = cfg.at("lambda").get<double>();
  ssou_fpt_process process = parse_process(cfg.at("process").get<std::string>());
  if (!cfg.contains("cases") || !cfg["cases"].is_array())
    fail_config("fpt config needs a \"cases\" array of {q, start, barrier}");

  Table table;
  table.header = {"q", "start", "barrier", "value"};
  for (const auto& item : cfg["cases"]) {
    double q = item.at("q").get<double>();
    double start = item.at("start").get<double>();
    double barrier = item.contains("barrier") ? item["barrier"].get<double>() : 0.0;
    double value = 0.0;
    check(ssou_fpt_laplace(psi.ptr, process, alpha, lambda, q, start, barrier, &value), "fpt");
    table.rows.push_back(
        {Table::cell(q), Table::cell(start), Table::cell(barrier), Table::cell(value)});
  }
  emit(table, out_path, format);
  return 0;
}

struct SampleWriter {
  std::ofstream os;
};

void sample_sink(long index, double hit_time, double overshoot, int killed, void* ctx) {
  auto* w = static_cast<SampleWriter*>(ctx);
  w->os << index << "," << Table::cell(hit_time) << "," << Table::cell(overshoot) << ","
        << killed << "\n";
}

int cmd_simulate(const json& cfg, const std::string& out_path, const std::string& format,
                 long n_paths, uint64_t seed, const std::string& samples_out) {
  ExponentHandle psi;
  make_exponent(cfg, psi);
  ssou_path_config pc;
  ssou_path_config_init(&pc);
  pc.alpha = cfg.at("alpha").get<double>();
  pc.lambda = cfg.at("lambda").get<double>();
  if (cfg.contains("dt")) pc.dt = cfg["dt"].get<double>();
  if (cfg.contains("horizon")) pc.horizon = cfg["horizon"].get<double>();
  if (cfg.contains("jump_cutoff")) pc.jump_cutoff = cfg["jump_cutoff"].get<double>();
  if (cfg.contains("scheme"))
    pc.scheme = cfg["scheme"].get<std::string>() == "jump_adapted" ? SSOU_SCHEME_JUMP_ADAPTED
                                                                   : SSOU_SCHEME_EULER;
  pc.seed = seed;
  ssou_fpt_process process = parse_process(cfg.at("process").get<std::string>());
  double q = cfg.at("q").get<double>();
  double start = cfg.at("start").get<double>();
  double barrier = cfg.contains("barrier") ? cfg["barrier"].get<double>() : 0.0;

  SampleWriter writer;
  ssou_sample_sink sink = nullptr;
  void* sink_ctx = nullptr;
  if (!samples_out.empty()) {
    writer.os.open(samples_out);
    if (!writer.os) fail_config("cannot open samples file: " + samples_out);
    writer.os << "path,hit_time,overshoot,killed\n";
    sink = &sample_sink;
    sink_ctx = &writer;
  }

  ssou_mc_result result;
  check(ssou_sim_fpt_laplace(psi.ptr, &pc, process, start, barrier, q, n_paths, sink, sink_ctx,
                             &result),
        "simulate");

  Table table;
  table.header = {"q", "start", "barrier", "estimate", "std_error", "n_paths", "n_hits"};
  std::vector<std::string> row = {Table::cell(q),
                                  Table::cell(start),
                                  Table::cell(barrier),
                                  Table::cell(result.estimate),
                                  Table::cell(result.std_error),
                                  std::to_string(result.n_paths),
                                  std::to_string(result.n_hits)};
  // Attach the closed form and its z-score when the library has one.
  double formula = 0.0;
  if (ssou_fpt_laplace(psi.ptr, process, pc.alpha, pc.lambda, q, start, barrier, &formula) ==
      SSOU_OK) {
    table.header.push_back("closed_form");
    table.header.push_back("z");
    row.push_back(Table::cell(formula));
    row.push_back(Table::cell((result.estimate - formula) / result.std_error));
  }
  table.rows.push_back(row);
  emit(table, out_path, format);
  return 0;
}

int cmd_validate(const std::string& suite, uint64_t seed, long paths, const std::string& out_path,
                 const std::string& format) {
  double scale = paths > 0 ? static_cast<double>(paths) / 100000.0 : 1.0;
  char* report = nullptr;
  int failed = 0;
  check(ssou_validate_run(suite.c_str(), seed, scale, &report, &failed), "validate");
  std::unique_ptr<char, decltype(&ssou_string_free)> guard(report, &ssou_string_free);

  json rows = json::parse(report);
  Table table;
  table.header = {"suite", "identity", "params", "metric", "observed", "tolerance", "status"};
  for (const auto& r : rows) {
    std::string status = r["scored"].get<bool>() ? (r["pass"].get<bool>() ? "pass" : "FAIL")
                                                 : "info";
    table.rows.push_back({r["suite"].get<std::string>(), r["identity"].get<std::string>(),
                          r["params"].get<std::string>(), r["metric"].get<std::string>(),
                          Table::cell(r["observed"].get<double>()),
                          Table::cell(r["tolerance"].get<double>()), status});
  }
  emit(table, out_path, format);
  if (out_path.empty()) {
    std::cout << (failed == 0 ? "all checks passed\n"
                              : std::to_string(failed) + " check(s) failed\n");
  }
  return failed == 0 ? 0 : kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"series, transforms and first-passage laws for self-similar Markov processes"};
  app.require_subcommand(1);

  std::string config_path, out_path, format = "csv", suite = "all", samples_out;
  long n_paths = 10000;
  uint64_t seed = 1;
  long validate_paths = 0;

  app.add_option("--format", format, "output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", out_path, "write the result table to this path");

  auto add_config = [&](CLI::App* cmd) {
    cmd->fallthrough();  // --out/--format may follow the subcommand
    cmd->add_option("--config", config_path, "JSON config file")->required();
  };

  auto* c_series = app.add_subcommand("eval-series", "evaluate the power series on a grid");
  add_config(c_series);
  auto* c_transform =
      app.add_subcommand("gamma-transform", "apply the Gamma mixing transform and cross-check");
  add_config(c_transform);
  auto* c_wh = app.add_subcommand("wiener-hopf", "stable-process factor evaluation");
  add_config(c_wh);
  auto* c_fpt = app.add_subcommand("fpt", "closed-form first-passage Laplace transforms");
  add_config(c_fpt);
  auto* c_sim = app.add_subcommand("simulate", "Monte Carlo first-passage estimation");
  add_config(c_sim);
  c_sim->add_option("--paths", n_paths, "number of Monte Carlo paths");
  c_sim->add_option("--seed", seed, "RNG seed");
  c_sim->add_option("--samples-out", samples_out, "write per-path samples to this CSV");
  auto* c_val = app.add_subcommand("validate", "run the cross-module identity suites");
  c_val->fallthrough();
  c_val->add_option("--suite", suite, "suite name or \"all\"");
  c_val->add_option("--seed", seed, "RNG seed");
  c_val->add_option("--paths", validate_paths,
                    "Monte Carlo paths for the primary checks (default 100000)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (c_series->parsed())
      return cmd_eval_series(load_config(config_path), out_path, format);
    if (c_transform->parsed())
      return cmd_gamma_transform(load_config(config_path), out_path, format);
    if (c_wh->parsed()) return cmd_wiener_hopf(load_config(config_path), out_path, format);
    if (c_fpt->parsed()) return cmd_fpt(load_config(config_path), out_path, format);
    if (c_sim->parsed())
      return cmd_simulate(load_config(config_path), out_path, format, n_paths, seed, samples_out);
    if (c_val->parsed()) return cmd_validate(suite, seed, validate_paths, out_path, format);
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitConfig;
}
