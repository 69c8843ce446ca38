#pragma once

#include <string>
#include <vector>

namespace fqre {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;  // computed values, reference values, conventions used
};

struct CriterionResult {
  int number = 0;
  std::string title;
  std::vector<CheckResult> checks;
  bool passed = false;  // conjunction of the checks
};

/// Run the full reproduction suite against the bundled experimental data:
/// calibrations, infeasibility findings, focal-set recomputations, implied
/// precision values, property sweeps, identification, and falsification
/// truth tables. Deterministic (fixed seeds).
std::vector<CriterionResult> run_reproduction();

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace fqre
