#pragma once

#include <string>
#include <vector>

namespace gblab {

enum class SelftestLevel { Fast, Full };

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

/// Runs the invariant suites (oracle equivalences, identities, regressions)
/// at a size chosen by level. Each check carries its own brute-force
/// reference.
std::vector<CheckResult> run_selftest(SelftestLevel level);

}  // namespace gblab
