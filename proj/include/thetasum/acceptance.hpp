#pragma once

#include <string>
#include <vector>

namespace thetasum {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Runs the verification criteria whose names contain `filter` (all when
/// empty). `cli_path`, when non-empty, points at the command-line binary so
/// the figure-reproduction criterion can exercise the scan command end to
/// end; otherwise the same rendering path is driven in-process.
std::vector<CriterionResult> run_acceptance(const std::string& filter = "",
                                            const std::string& cli_path = "");

}  // namespace thetasum
