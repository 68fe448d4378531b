#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "distpair/experiments.hpp"

namespace {

void print_summary(const distpair::RunSummary& summary, const std::string& out_dir) {
  for (const auto& result : summary.results) {
    std::printf("%s\n", result.name.c_str());
    for (const auto& o : result.outcomes) {
      std::printf("  %-28s %-13s residual=%.3e tol=%.3e\n", o.name.c_str(),
                  distpair::to_string(o.verdict).c_str(), o.residual, o.tolerance);
    }
  }
  std::printf("report: %s/report.json\n", out_dir.c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical verdicts on distributional identities for coth, csch^2 and the "
               "quantum noise kernel"};
  app.name("distpair");

  std::vector<std::string> experiments;
  std::string names;
  for (const auto& n : distpair::experiment_names()) names += (names.empty() ? "" : ", ") + n;
  app.add_option("experiment", experiments, "One or more of: " + names);

  std::optional<std::string> config_path;
  std::vector<std::pair<std::string, std::optional<std::string>>> flags{
      {"tol", {}},   {"out", {}},  {"eps_ladder", {}}, {"lambda", {}},
      {"max_m", {}}, {"seed", {}}, {"eps", {}}};
  app.add_option("--config", config_path, "Flat key=value configuration file");
  app.add_option("--tol", flags[0].second, "Override every value tolerance");
  app.add_option("--out", flags[1].second, "Output directory (default distpair-out)");
  app.add_option("--eps-ladder", flags[2].second, "Decreasing eps ladder, comma separated");
  app.add_option("--lambda", flags[3].second, "lambda = pi kT / hbar for the noise kernel");
  app.add_option("--max-m", flags[4].second, "Highest even moment index m (moments 0..2m+1)");
  app.add_option("--seed", flags[5].second, "Seed for the linearity draws");
  app.add_option("--eps", flags[6].second, "eps values of the moment tables, comma separated");
  std::vector<std::string> settings;
  app.add_option("--set", settings, "Any configuration key as key=value (repeatable)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::fprintf(stderr, "error: %s\n%s", e.what(), app.help().c_str());
    return 2;
  }

  distpair::RunConfig config;
  try {
    if (config_path) distpair::load_config_file(config, *config_path);
    for (const std::string& s : settings) {
      const auto eq = s.find('=');
      if (eq == std::string::npos) throw distpair::ConfigError("--set expects key=value");
      distpair::apply_setting(config, s.substr(0, eq), s.substr(eq + 1));
    }
    for (const auto& [key, value] : flags) {
      if (value) distpair::apply_setting(config, key, *value);
    }
    if (!experiments.empty()) config.experiments = experiments;
    distpair::validate(config);
  } catch (const distpair::ConfigError& e) {
    std::fprintf(stderr, "error: %s\n%s", e.what(), app.help().c_str());
    return 2;
  }

  try {
    const distpair::RunSummary summary = distpair::run(config);
    print_summary(summary, config.out_dir);
    return summary.exit_code;
  } catch (const distpair::ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const distpair::ReportError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
