#pragma once

#include <string>
#include <vector>

#include "mixsum/report.hpp"

namespace mixsum {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
  double time_limit = 0.0;
  json data;
};

inline constexpr int criterion_count = 10;

// Fixed tolerances and constants used by the acceptance suite.
namespace limits {
inline constexpr double second_moment_rel = 1e-10;
inline constexpr double poisson_per_sqrt_x = 1e-6;
inline constexpr double bridge_abs = 1e-6;
inline constexpr double pigeonhole_K = 8.0;
inline constexpr double pigeonhole_c = 1.0 / 3.0;
inline constexpr double clean_K = 8.0;
inline constexpr double clean_growth = 1.25;
inline constexpr double ratio_low = 0.5;
inline constexpr double ratio_high = 1.0;
inline constexpr double shortsum_rel = 1e-9;
inline constexpr double zeta2_abs = 1e-6;
inline constexpr double dyadic_ratio = 4.0;
}  // namespace limits

// Runs one criterion (1..10). Never throws; exceptions become failures.
CriterionResult run_criterion(int id);
// Runs the listed criteria, or all of them when ids is empty.
std::vector<CriterionResult> run_acceptance(const std::vector<int>& ids = {});

std::string format_result(const CriterionResult& r);

}  // namespace mixsum
