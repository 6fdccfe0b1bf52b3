#pragma once

#include <string>

namespace forest {

// Outcome of a verification-style operation.
struct CheckResult {
  bool passed = false;
  double max_defect = 0.0;
  int skipped = 0;  // indices excluded from a quotient check (0/0 cases)
  std::string detail;
};

}  // namespace forest
