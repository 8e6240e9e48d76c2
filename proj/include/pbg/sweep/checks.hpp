#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pbg {

enum class CheckLevel { Fast, Full };

struct CheckResult {
  std::string name;
  bool passed = false;
  double value = 0;      // measured quantity
  double threshold = 0;  // bound it was compared to
  std::string detail;
};

struct CheckReport {
  std::vector<CheckResult> results;
  double seconds = 0;

  bool passed() const;
};

/// Invariant suites of every module. Fast keeps sample sizes small.
CheckReport run_checks(CheckLevel level);

/// One line per check: `check <name> <PASS|FAIL> value=<v> threshold=<t>`,
/// then `summary passed=<n> failed=<m> seconds=<s>`.
void print_report(std::ostream& out, const CheckReport& report);

}  // namespace pbg
