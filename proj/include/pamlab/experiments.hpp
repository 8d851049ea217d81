#pragma once

#include <string>
#include <utility>
#include <vector>

#include "pamlab/config.hpp"

namespace pamlab {

struct CheckResult {
  std::string name;
  bool pass = false;
  double value = 0.0;
  double threshold = 0.0;
};

struct ExperimentOutcome {
  int exit_code = 0;  // 0 = ok, 1 = checks failed
  std::vector<CheckResult> checks;
  std::vector<std::string> csv_files;
  std::vector<std::pair<std::string, double>> printed;
};

// Runs one configured experiment, writing CSV artifacts and summary.json
// under cfg.out_dir. Throws config_error / domain_error / numerical_error
// for status-2/3/4 conditions; check failures set exit_code = 1.
ExperimentOutcome run_experiment(const ExperimentConfig& cfg);

}  // namespace pamlab
