#include "distpair/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace distpair {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s) {
  std::vector<std::string_view> parts;
  while (true) {
    const auto comma = s.find(',');
    parts.push_back(trim(s.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return parts;
}

double parse_double(std::string_view key, std::string_view text) {
  const std::string buf(text);
  char* end = nullptr;
  const double v = std::strtod(buf.c_str(), &end);
  if (buf.empty() || end != buf.c_str() + buf.size() || !std::isfinite(v)) {
    throw ConfigError("invalid number for '" + std::string(key) + "': '" + buf + "'");
  }
  return v;
}

template <class Int>
Int parse_int(std::string_view key, std::string_view text) {
  Int v{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw ConfigError("invalid integer for '" + std::string(key) + "': '" + std::string(text) + "'");
  }
  return v;
}

std::vector<double> parse_list(std::string_view key, std::string_view text) {
  std::vector<double> out;
  for (std::string_view part : split(text)) out.push_back(parse_double(key, part));
  return out;
}

std::string join(const std::vector<double>& values) {
  std::string s;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) s += ",";
    s += format_number(values[i]);
  }
  return s;
}

}  // namespace

std::string format_number(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names{
      "verify-derivative", "moments",           "identity-11-12", "semiclassical",
      "series-accuracy",   "eps-decomposition", "noise-split",    "all"};
  return names;
}

void apply_setting(RunConfig& c, std::string_view key_in, std::string_view value_in) {
  const std::string_view key = trim(key_in);
  const std::string_view value = trim(value_in);
  if (key == "experiments") {
    c.experiments.clear();
    for (std::string_view e : split(value)) {
      if (!e.empty()) c.experiments.emplace_back(e);
    }
  } else if (key == "tol") {
    c.tol = parse_double(key, value);
  } else if (key == "eps_ladder") {
    c.eps_ladder.values = parse_list(key, value);
    c.eps_ladder.extrapolation_order = static_cast<int>(c.eps_ladder.values.size()) - 1;
  } else if (key == "eps_ladder_order") {
    c.eps_ladder.extrapolation_order = parse_int<int>(key, value);
  } else if (key == "eps_ladder_exponent") {
    c.eps_ladder.exponent = parse_int<int>(key, value);
  } else if (key == "lambda") {
    c.lambda = parse_double(key, value);
  } else if (key == "kT") {
    c.kT = parse_double(key, value);
  } else if (key == "zeta") {
    c.zeta = parse_double(key, value);
  } else if (key == "max_m") {
    c.max_m = parse_int<int>(key, value);
  } else if (key == "eps") {
    c.moment_eps = parse_list(key, value);
  } else if (key == "identity_a") {
    c.identity_a = parse_list(key, value);
  } else if (key == "identity_max_m") {
    c.identity_max_m = parse_int<int>(key, value);
  } else if (key == "series_terms") {
    c.series_terms = parse_int<std::int64_t>(key, value);
  } else if (key == "slope_tol") {
    c.slope_tol = parse_double(key, value);
  } else if (key == "hbar_rungs") {
    c.hbar_rungs = parse_int<int>(key, value);
  } else if (key == "seed") {
    c.seed = parse_int<std::uint64_t>(key, value);
  } else if (key == "battery_centers") {
    c.battery.centers = parse_list(key, value);
  } else if (key == "battery_widths") {
    c.battery.widths = parse_list(key, value);
  } else if (key == "out") {
    if (value.empty()) throw ConfigError("'out' must not be empty");
    c.out_dir = std::string(value);
  } else {
    throw ConfigError("unknown configuration key '" + std::string(key) + "'");
  }
}

void load_config_file(RunConfig& config, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string_view s = trim(line);
    if (s.empty() || s.front() == '#') continue;
    const auto eq = s.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(path.string() + ":" + std::to_string(number) + ": expected key=value");
    }
    apply_setting(config, s.substr(0, eq), s.substr(eq + 1));
  }
}

void validate(const RunConfig& c) {
  if (c.experiments.empty()) throw ConfigError("no experiment given");
  const auto& names = experiment_names();
  for (const std::string& e : c.experiments) {
    if (std::find(names.begin(), names.end(), e) == names.end()) {
      throw ConfigError("unknown experiment '" + e + "'");
    }
  }
  if (c.tol && !(*c.tol > 0.0)) throw ConfigError("tol must be positive");
  if (!(c.slope_tol > 0.0)) throw ConfigError("slope_tol must be positive");
  try {
    validate(c.eps_ladder);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("eps_ladder: ") + e.what());
  }
  for (double v : {c.lambda, c.kT, c.zeta}) {
    if (!(v > 0.0)) throw ConfigError("lambda, kT and zeta must be positive");
  }
  if (c.max_m < 0 || 2 * c.max_m + 1 > 15) throw ConfigError("max_m must be in [0, 7]");
  if (c.identity_max_m < 0 || c.identity_max_m > 10) {
    throw ConfigError("identity_max_m must be in [0, 10]");
  }
  for (double e : c.moment_eps) {
    if (!(e > 0.0 && e < 1.5707963267948966)) throw ConfigError("eps values must lie in (0, pi/2)");
  }
  if (c.moment_eps.empty()) throw ConfigError("eps list must not be empty");
  for (double a : c.identity_a) {
    if (!(a > 0.0 && a < 1.0) || a == 0.5) throw ConfigError("identity_a values must lie in (0, 1), not 1/2");
  }
  if (c.identity_a.empty()) throw ConfigError("identity_a must not be empty");
  if (c.series_terms < 1) throw ConfigError("series_terms must be >= 1");
  if (c.hbar_rungs < 3) throw ConfigError("hbar_rungs must be >= 3");
  if (c.battery.widths.empty() || c.battery.centers.empty()) {
    throw ConfigError("battery centers and widths must not be empty");
  }
  for (double w : c.battery.widths) {
    if (!(w > 0.0)) throw ConfigError("battery widths must be positive");
  }
}

std::vector<std::pair<std::string, std::string>> describe(const RunConfig& c) {
  std::string experiments;
  for (std::size_t i = 0; i < c.experiments.size(); ++i) {
    if (i > 0) experiments += ",";
    experiments += c.experiments[i];
  }
  return {
      {"experiments", experiments},
      {"tol", c.tol ? format_number(*c.tol) : "default"},
      {"eps_ladder", join(c.eps_ladder.values)},
      {"eps_ladder_order", std::to_string(c.eps_ladder.extrapolation_order)},
      {"eps_ladder_exponent", std::to_string(c.eps_ladder.exponent)},
      {"lambda", format_number(c.lambda)},
      {"kT", format_number(c.kT)},
      {"zeta", format_number(c.zeta)},
      {"max_m", std::to_string(c.max_m)},
      {"eps", join(c.moment_eps)},
      {"identity_a", join(c.identity_a)},
      {"identity_max_m", std::to_string(c.identity_max_m)},
      {"series_terms", std::to_string(c.series_terms)},
      {"slope_tol", format_number(c.slope_tol)},
      {"hbar_rungs", std::to_string(c.hbar_rungs)},
      {"seed", std::to_string(c.seed)},
      {"battery_centers", join(c.battery.centers)},
      {"battery_widths", join(c.battery.widths)},
  };
}

}  // namespace distpair
