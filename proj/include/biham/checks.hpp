#pragma once

// Self-contained acceptance battery: ten numbered checks exercising the
// library end to end against frozen reference values.  Each check reports
// pass/fail plus a human-readable detail line; the formatter renders one
// line per check.  A failing check is a finding, not necessarily a bug —
// the detail line states what was measured and what value was pinned.

#include <cstdint>
#include <string>
#include <vector>

#include "biham/config.hpp"

namespace biham {

struct CheckResult {
  std::size_t index = 0;
  std::string name;
  bool passed = false;
  std::string details;
};

// Runs all ten checks with the given seed for the randomized ones.
std::vector<CheckResult> run_acceptance_checks(std::uint64_t seed, const Tolerances& tol = {});

// One "PASS/FAIL <index> <name>: <details>" line per check plus a summary line.
std::string format_check_results(const std::vector<CheckResult>& results);

}  // namespace biham
