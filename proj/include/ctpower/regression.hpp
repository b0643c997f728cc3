#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ctpower/analysis.hpp"

namespace ctpower {

struct RegressionOptions {
  int samples = 10000;
  std::uint64_t seed = 20240817;
  /// Debug switch: corrupts one correction-table entry so the 2-GHZ control
  /// power check must fail (negative control).
  bool corrupt_table = false;
};

struct RegressionRow {
  std::string id;
  std::string description;
  bool pass = false;
  std::string detail;
};

/// Runs the full regression battery; one row per published result or bound.
std::vector<RegressionRow> run_regression(const RegressionOptions& options);

std::string render_regression_table(const std::vector<RegressionRow>& rows);

}  // namespace ctpower
