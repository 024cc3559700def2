// Release gate runner: prints one line per criterion and exits nonzero if
// any criterion fails.
#include <iostream>

#include "mdla/acceptance.hpp"

int main() {
  const auto results = mdla::acceptance::run_all(std::cout);
  int failures = 0;
  for (const auto& r : results)
    if (!r.passed) ++failures;
  std::cout << (failures == 0 ? "ALL CRITERIA PASSED"
                              : "FAILED CRITERIA: " + std::to_string(failures))
            << "\n";
  return failures == 0 ? 0 : 1;
}
