#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ssou {
namespace validation {

// One identity check: the observed residual (or |z|-score for Monte Carlo
// rows) against its tolerance. Unscored rows are diagnostics and do not
// count toward failure.
struct Row {
  std::string suite;
  std::string identity;
  std::string params;
  std::string metric;  // "residual" | "z" | "bound"
  double observed = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  bool scored = true;
};

struct Options {
  std::uint64_t seed = 1;
  // Scales the Monte Carlo path counts relative to the full-size suites
  // (1.0 = the sizes the acceptance run uses).
  double path_scale = 1.0;
};

// Suites: gamma-transform, kummer, mittag-leffler, wiener-hopf, martingale,
// fpt, tzero, properties, and "all".
std::vector<std::string> suite_names();
std::vector<Row> run_suite(const std::string& name, const Options& options = {});

bool all_pass(const std::vector<Row>& rows);
std::string to_json(const std::vector<Row>& rows);

}  // namespace validation
}  // namespace ssou
