#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "distpair/check_outcome.hpp"
#include "distpair/config.hpp"

namespace distpair {

struct ExperimentResult {
  std::string name;
  std::vector<CheckOutcome> outcomes;
  std::string csv;  // contents of <name>.csv
};

// Thrown when report files cannot be written.
class ReportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// JSON document: schema, verdict, exit_code, config, experiments[] (name, verdict, csv,
// checks[] (name, verdict, residual, tolerance, inputs_digest, details[])). Keys in that
// fixed order, numbers as %.17g, non-finite numbers as null, ASCII only.
std::string report_json(const RunConfig& config, std::span<const ExperimentResult> results);

// One row per detail row, prefixed by the check name; columns are the union of
// detail columns in order of first appearance.
std::string outcomes_csv(std::span<const CheckOutcome> outcomes);

// Writes report.json and one <experiment>.csv per result into dir (created if missing).
void emit_report(const std::filesystem::path& dir, const RunConfig& config,
                 std::span<const ExperimentResult> results);

}  // namespace distpair
