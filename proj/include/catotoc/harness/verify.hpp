#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace catotoc::harness {

enum class VerifyLevel { fast, full };

struct CheckResult {
  std::string name;
  bool passed = false;
  double residual = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

struct VerifyReport {
  VerifyLevel level = VerifyLevel::fast;
  std::vector<CheckResult> checks;

  bool all_passed() const;
  int failures() const;
};

/// Fast stays at n <= 8; full adds the n = 16..64 cases and the sampling oracles.
VerifyReport verify(VerifyLevel level);

/// CSV: invariant,status,residual,tolerance,detail
void write_verify_report(std::ostream& os, const VerifyReport& report);

std::string_view to_string(VerifyLevel level);

}  // namespace catotoc::harness
