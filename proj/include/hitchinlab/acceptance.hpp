#pragma once

#include <string>
#include <vector>

#include "hitchinlab/report.hpp"

namespace hitchinlab {

struct CriterionResult {
  int id = 0;
  std::string title;
  double seconds = 0.0;
  double budget = 0.0;
  std::vector<CheckResult> checks;
  std::string failure;

  bool pass() const { return failure.empty() && all_pass(checks); }
};

std::vector<CriterionResult> run_acceptance(int workers = 1);
std::vector<CheckResult> flatten(const std::vector<CriterionResult>& criteria);
std::string summary_line(const CriterionResult& c);

}  // namespace hitchinlab
