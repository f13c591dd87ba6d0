#pragma once

#include <string>
#include <vector>

#include "clab/report.hpp"

namespace clab {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  Json data;  // deterministic evidence, no timings
};

// Criteria 1..9. Criterion 10 (determinism) needs two runs and lives in
// determinism_criterion.
CriterionResult run_criterion(int id, const RunConfig& cfg);
std::vector<int> all_criteria();

Json selftest_report(const RunConfig& cfg, const std::vector<int>& ids,
                     std::vector<CriterionResult>* results = nullptr);

// Reruns the selftest with serial kernels and compares the emitted bytes
// with a report produced earlier from the same config.
CriterionResult determinism_criterion(const RunConfig& cfg, const std::vector<int>& ids,
                                      const std::string& first_report);

std::string result_line(const CriterionResult& r);

}  // namespace clab
