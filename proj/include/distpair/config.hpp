#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "distpair/pairing.hpp"
#include "distpair/test_functions.hpp"

namespace distpair {

// Bad configuration or usage; maps to exit status 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::vector<std::string> experiments;
  std::optional<double> tol;  // overrides every value tolerance when set
  LadderSpec eps_ladder = default_eps_ladder();
  double lambda = 5.0;
  double kT = 1.0;
  double zeta = 1.0;
  int max_m = 3;
  std::vector<double> moment_eps{0.3, 0.1};
  std::vector<double> identity_a{0.1, 0.25, 0.4};
  int identity_max_m = 2;
  std::int64_t series_terms = 1000000;
  double slope_tol = 0.3;
  int hbar_rungs = 4;
  std::uint64_t seed = 20240601;
  BatteryParams battery;
  std::string out_dir = "distpair-out";
};

// Names accepted as experiments, "all" last.
const std::vector<std::string>& experiment_names();

// Applies one key=value setting. Keys (lists are comma separated):
//   experiments, tol, eps_ladder, eps_ladder_order, eps_ladder_exponent, lambda, kT, zeta,
//   max_m, eps, identity_a, identity_max_m, series_terms, slope_tol, hbar_rungs, seed,
//   battery_centers, battery_widths, out
// Setting eps_ladder resets the extrapolation order to (length - 1).
// Throws ConfigError on unknown keys or unparsable values.
void apply_setting(RunConfig& config, std::string_view key, std::string_view value);

// Flat key=value file; blank lines and lines starting with '#' are ignored.
void load_config_file(RunConfig& config, const std::filesystem::path& path);

// Throws ConfigError on empty or unknown experiment names, non-positive tolerances,
// or invalid ladders and battery parameters.
void validate(const RunConfig& config);

// Resolved settings in a fixed order, values formatted for the report.
std::vector<std::pair<std::string, std::string>> describe(const RunConfig& config);

// "%.17g"
std::string format_number(double value);

}  // namespace distpair
