#pragma once

#include <string_view>
#include <vector>

#include "distpair/config.hpp"
#include "distpair/report.hpp"

namespace distpair {

// Runs one named experiment (not "all"). Throws ConfigError for unknown names.
ExperimentResult run_experiment(std::string_view name, const RunConfig& config);

// Experiment names with "all" expanded and duplicates dropped, in first-seen order.
std::vector<std::string> expand_experiments(const std::vector<std::string>& requested);

struct RunSummary {
  std::vector<ExperimentResult> results;
  int exit_code = 0;
};

// Validates the config, runs the experiments, writes the report into config.out_dir.
// Exit code per check_outcome's exit_code(). Throws ConfigError or ReportError.
RunSummary run(const RunConfig& config);

}  // namespace distpair
