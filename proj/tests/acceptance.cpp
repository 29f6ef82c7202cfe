// Acceptance gate: runs every identity suite at full size and prints one
// pass/fail line per criterion with its runtime. Exit code 0 only when all
// scored checks pass and the runtime budgets hold.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "core/validation.hpp"

using ssou::validation::Options;
using ssou::validation::Row;
using ssou::validation::run_suite;

namespace {

struct Criterion {
  const char* label;
  const char* suite;
  double budget_seconds;  // 0 = no individual budget
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main() {
  const Criterion criteria[] = {
      {"Gamma-transform vs series (20 random pairs, rel 1e-7)", "gamma-transform", 5.0},
      {"confluent-hypergeometric identities (rel 1e-9)", "kummer", 10.0},
      {"Mittag-Leffler identities and product constant", "mittag-leffler", 0.0},
      {"Wiener-Hopf factorization and tail exponent", "wiener-hopf", 0.0},
      {"space-time invariance on paths (1e5 paths, 3 SE)", "martingale", 60.0},
      {"first-passage transforms vs simulation (1e5 paths, 3 SE)", "fpt", 0.0},
      {"passage-to-zero reading vs killed paths (3 SE)", "tzero", 0.0},
      {"module property suites", "properties", 0.0},
  };

  Options options;
  int n_failed = 0;
  auto total_start = std::chrono::steady_clock::now();

  int index = 0;
  for (const auto& criterion : criteria) {
    ++index;
    auto t0 = std::chrono::steady_clock::now();
    std::vector<Row> rows;
    bool threw = false;
    std::string what;
    try {
      rows = run_suite(criterion.suite, options);
    } catch (const std::exception& e) {
      threw = true;
      what = e.what();
    }
    double elapsed = seconds_since(t0);

    bool pass = !threw;
    double worst_margin = 0.0;
    std::string worst_desc = "-";
    for (const auto& row : rows) {
      if (!row.scored) continue;
      if (!row.pass) pass = false;
      double margin = row.tolerance > 0.0 ? row.observed / row.tolerance : (row.pass ? 0.0 : 2.0);
      if (margin > worst_margin) {
        worst_margin = margin;
        worst_desc = row.identity + " [" + row.params + "] " + row.metric + "=" +
                     std::to_string(row.observed);
      }
    }
    bool in_budget = criterion.budget_seconds <= 0.0 || elapsed <= criterion.budget_seconds;
    if (!in_budget) pass = false;
    if (!pass) ++n_failed;

    std::printf("[%d/8] %s  %s  (%.1fs%s)\n", index, pass ? "PASS" : "FAIL", criterion.label,
                elapsed,
                criterion.budget_seconds > 0.0
                    ? (std::string(" / budget ") + std::to_string((int)criterion.budget_seconds) +
                       "s")
                          .c_str()
                    : "");
    if (threw) {
      std::printf("       error: %s\n", what.c_str());
      continue;
    }
    std::printf("       checks: %zu, worst margin %.2f of tolerance (%s)\n", rows.size(),
                worst_margin, worst_desc.c_str());
    for (const auto& row : rows) {
      if (!row.scored)
        std::printf("       note: %s [%s] %s = %.3g\n", row.identity.c_str(), row.params.c_str(),
                    row.metric.c_str(), row.observed);
      else if (!row.pass)
        std::printf("       FAIL: %s [%s] %s = %.3g vs %.3g\n", row.identity.c_str(),
                    row.params.c_str(), row.metric.c_str(), row.observed, row.tolerance);
    }
  }

  double total = seconds_since(total_start);
  bool within_total = total < 300.0;
  std::printf("total runtime %.1fs %s(budget 300s)\n", total, within_total ? "" : "EXCEEDED ");
  if (!within_total) ++n_failed;

  if (n_failed == 0) {
    std::printf("acceptance: all criteria passed\n");
    return 0;
  }
  std::printf("acceptance: %d criterion(s) failed\n", n_failed);
  return 1;
}
