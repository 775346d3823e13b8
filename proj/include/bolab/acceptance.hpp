#pragma once

#include <string>
#include <vector>

namespace bolab {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

// Runs the acceptance criteria (all of them when only_id == 0) and returns
// one result per criterion.  Each criterion is self-contained and pins its
// tolerances in code.
std::vector<CriterionResult> run_acceptance(int only_id = 0);

// Prints one pass/fail line per criterion; returns the number of failures.
int acceptance_report(int only_id = 0);

}  // namespace bolab
