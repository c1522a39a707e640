#pragma once

// Invariant suites run by `qdl oracle`. Each check reports the measured
// residual against its tolerance.

#include <string>
#include <vector>

namespace qdl {

enum class Suite { Discrete, Basis, Embedding, Learn, All };

Suite suite_from_string(const std::string& name);

struct CheckResult {
  std::string suite;
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

std::vector<CheckResult> run_suite(Suite suite);

}  // namespace qdl
