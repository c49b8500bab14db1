#pragma once

#include <string>
#include <vector>

namespace spqc {

struct SelftestCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SelftestReport {
  std::vector<SelftestCheck> checks;
  double seconds = 0.0;
  bool passed() const;
};

// Invariant suite over every module: unitarity, DFT round trips, norm
// orderings, percentile monotonicity, byte-determinism and friends.
SelftestReport run_selftest();

}  // namespace spqc
