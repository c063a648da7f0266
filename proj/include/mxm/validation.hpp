#pragma once

// Invariant suite on built-in micro-scenarios (8^3 and 16^3 grids). Used by
// `mxm validate`; each check is independent and reports a measured value.

#include <functional>
#include <string>
#include <vector>

namespace mxm {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Runs every check; `progress` (optional) sees each result as it completes.
std::vector<CheckResult> run_validation_suite(
    const std::function<void(const CheckResult&)>& progress = {});

}  // namespace mxm
