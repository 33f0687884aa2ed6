#pragma once

#include <string>
#include <vector>

#include "common.hpp"

namespace crdet {

struct CheckResult {
  std::string name;
  bool pass = false;
  double measured = 0.0;   // worst observed defect (or value of interest)
  double threshold = 0.0;  // pass criterion
  std::string note;
};

struct VerifyOptions {
  int degree = 4;
  int n_eta = 32;
  int n_xi = 33;
  std::uint64_t seed = 12345;
  double kappa = 1.0;
  double c2 = 1.0;
  double c3 = 0.0;
  std::string model_path;  // optional synthetic model to schema-check
};

// Runs the invariant suites of every module and returns one named result per
// check. All tolerances are pinned here.
std::vector<CheckResult> run_verify(const VerifyOptions& opt);

}  // namespace crdet
