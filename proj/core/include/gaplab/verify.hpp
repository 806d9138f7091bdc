#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace gaplab {

struct PropertyResult {
  std::string name;
  int trials = 0;
  int failures = 0;
  int reported = 0;  // hypothesis-violating draws that were skipped, not asserted
  bool passed = false;
  std::string detail;
};

struct SuiteResult {
  std::string name;
  std::vector<PropertyResult> properties;
  bool passed = true;
};

/// Runs the built-in property suites ("grassmann", "graphop", "holomorphy",
/// or "all").  Deterministic under a fixed seed.  Throws
/// std::invalid_argument for unknown suite names.
std::vector<SuiteResult> run_verify_suites(const std::string& which, std::uint64_t seed);

}  // namespace gaplab
