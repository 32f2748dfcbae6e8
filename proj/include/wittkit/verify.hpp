#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace wittkit {

struct SuiteReport {
  std::string suite;
  uint64_t seed = 0;
  int size = 0;
  int trials = 0;
  int passed = 0;
  int failed = 0;
  int expected_obstructions = 0;  // DoesNotExist cases the theory predicts
  std::string first_counterexample;
  bool ok() const { return failed == 0; }
};

// named property suites driven by the CLI: rt | nr | tn | bispan | dwork |
// roundtrip. size bounds poset element counts; trials <= 0 picks the default.
SuiteReport run_suite(const std::string& name, uint64_t seed, int size, int trials);

std::vector<std::string> suite_names();

}  // namespace wittkit
