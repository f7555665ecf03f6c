#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace orbitmetric {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
  double budget_seconds = 0.0;
};

inline constexpr int kCriterionCount = 13;

/// Runs one acceptance criterion (1-based id); checks and runtime budget are
/// fixed in code.
CriterionResult run_criterion(int id);

/// Runs every criterion, printing one PASS/FAIL line each to `out` when given.
std::vector<CriterionResult> run_acceptance(std::ostream* out = nullptr);

std::string format_result(const CriterionResult& r);

}  // namespace orbitmetric
