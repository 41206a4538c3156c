#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "scalebench/report.hpp"

namespace scalebench::acceptance {

struct Config {
  std::uint64_t seed = 20240601;
  // Smoke mode: caps every trial count (and Schur windows) at this value.
  std::optional<int> smoke;
};

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;
  report::Certificate (*run)(const Config&);
};

// Criteria 1–12; the suite-level criterion 13 is driven through the CLI.
const std::vector<Criterion>& criteria();

// Runs one criterion, records its runtime and folds the budget into `pass`
// (budgets are not enforced in smoke mode).
report::Certificate run_criterion(const Criterion& c, const Config& cfg);
std::vector<report::Certificate> run_all(const Config& cfg);

}  // namespace scalebench::acceptance
