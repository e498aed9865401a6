#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>

#include "gazener/experiments/experiment.hpp"
#include "gazener/experiments/significance.hpp"

namespace gazener::experiments {

struct ReportRow {
  const ExperimentReport* report = nullptr;
  std::optional<TTestResult> versus_baseline;  // marks significant rows with '*'
};

// P / R / F (percent, two decimals) per model, one row each.
std::string format_results_table(const std::string& title, std::span<const ReportRow> rows);

// Per-class P / R / F: one block per entity class, one row per model.
std::string format_per_class(std::span<const ReportRow> rows);

// One row per fold of every report.
void write_fold_csv(std::ostream& out, std::span<const ReportRow> rows);

}  // namespace gazener::experiments
