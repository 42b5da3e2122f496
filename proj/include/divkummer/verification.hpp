#pragma once

#include <string>
#include <vector>

namespace divkum {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  double ms = 0.0;
  std::string detail;
};

// The acceptance criteria, each with its runtime budget pinned in code.
// An empty detail string means every check in the criterion held.
std::vector<CriterionResult> run_acceptance();

}  // namespace divkum
