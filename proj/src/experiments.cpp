#include "distpair/experiments.hpp"

#include <algorithm>
#include <sstream>

#include "distpair/checks.hpp"
#include "distpair/moments.hpp"
#include "distpair/noise_kernel.hpp"

namespace distpair {

namespace {

double value_tol(const RunConfig& c, double fallback) { return c.tol.value_or(fallback); }

ExperimentResult finish(std::string name, std::vector<CheckOutcome> outcomes) {
  ExperimentResult r{std::move(name), std::move(outcomes), {}};
  r.csv = outcomes_csv(r.outcomes);
  return r;
}

ExperimentResult verify_derivative(const RunConfig& c) {
  const auto battery = shifted_family(c.battery);
  return finish("verify-derivative",
                {check_derivative_identity(battery, value_tol(c, kDerivativeCheckTol)),
                 linearity_check(KernelSpec::coth_pv(), battery, c.seed, 8, value_tol(c, 1e-7)),
                 linearity_check(KernelSpec::csch2_fp(), battery, c.seed + 1, 8,
                                 value_tol(c, 1e-7))});
}

ExperimentResult moments(const RunConfig& c) {
  std::vector<MomentTable> tables;
  for (double eps : c.moment_eps) tables.push_back(coth_eps_moment_table(eps, 2 * c.max_m + 1));
  ExperimentResult r{"moments",
                     {moment_closed_form_check(tables, value_tol(c, 1e-7)),
                      odd_moment_check(tables, value_tol(c, 1e-9)),
                      moment_limit_check(c.max_m, c.eps_ladder, value_tol(c, kDefaultLimitTol)),
                      csch2_mass_check(value_tol(c, 1e-8))},
                     {}};
  std::ostringstream csv;
  write_csv(csv, tables);
  r.csv = csv.str();
  return r;
}

ExperimentResult identity(const RunConfig& c) {
  return finish("identity-11-12", {cosh_power_identity_check(c.identity_max_m, c.identity_a,
                                                             value_tol(c, 1e-8),
                                                             value_tol(c, 1e-10))});
}

ExperimentResult semiclassical(const RunConfig& c) {
  const double lambdas[] = {10.0, 20.0, 40.0};
  const auto ladder = hbar_ladder(PhysicalParams::from_lambda(c.lambda, c.kT, c.zeta), c.hbar_rungs);
  return finish("semiclassical",
                {moment_expansion_order_check(gaussian(0.0, 1.0), lambdas, -3.0, c.slope_tol),
                 semiclassical_limit(ladder, gaussian(0.0, 1.0), c.slope_tol)});
}

ExperimentResult series_accuracy(const RunConfig& c) {
  return finish("series-accuracy",
                {series_accuracy_check({c.series_terms, true}, value_tol(c, 1e-10), 1e-13)});
}

ExperimentResult eps_decomposition(const RunConfig& c) {
  const double tol = value_tol(c, kDefaultLimitTol);
  const SeriesTruncation trunc{c.series_terms, true};
  return finish("eps-decomposition",
                {nascent_delta_check({gaussian(0.0, 1.0), gaussian(0.5, 0.5), bump(0.5, 2.0),
                                      hermite_gaussian(1, 0.0, 1.0)},
                                     c.eps_ladder, tol),
                 coth_eps_decomposition_check(gaussian(0.0, 1.0), trunc, c.eps_ladder, tol),
                 coth_eps_decomposition_check(gaussian(0.5, 0.5), trunc, c.eps_ladder, tol),
                 coth_eps_decomposition_check(hermite_gaussian(1, 0.0, 1.0), trunc, c.eps_ladder,
                                              tol)});
}

ExperimentResult noise_split(const RunConfig& c) {
  const PhysicalParams p = PhysicalParams::from_lambda(c.lambda, c.kT, c.zeta);
  const auto battery = shifted_family(c.battery);
  return finish("noise-split", {split_check(p, battery, value_tol(c, 1e-5)),
                                autocorr_route_check(p, battery, value_tol(c, 1e-6))});
}

}  // namespace

ExperimentResult run_experiment(std::string_view name, const RunConfig& c) {
  if (name == "verify-derivative") return verify_derivative(c);
  if (name == "moments") return moments(c);
  if (name == "identity-11-12") return identity(c);
  if (name == "semiclassical") return semiclassical(c);
  if (name == "series-accuracy") return series_accuracy(c);
  if (name == "eps-decomposition") return eps_decomposition(c);
  if (name == "noise-split") return noise_split(c);
  throw ConfigError("unknown experiment '" + std::string(name) + "'");
}

std::vector<std::string> expand_experiments(const std::vector<std::string>& requested) {
  std::vector<std::string> out;
  auto add = [&](const std::string& name) {
    if (std::find(out.begin(), out.end(), name) == out.end()) out.push_back(name);
  };
  for (const std::string& name : requested) {
    if (name == "all") {
      for (const std::string& n : experiment_names()) {
        if (n != "all") add(n);
      }
    } else {
      add(name);
    }
  }
  return out;
}

RunSummary run(const RunConfig& config) {
  validate(config);
  RunSummary summary;
  for (const std::string& name : expand_experiments(config.experiments)) {
    summary.results.push_back(run_experiment(name, config));
  }
  emit_report(config.out_dir, config, summary.results);
  std::vector<CheckOutcome> all;
  for (const ExperimentResult& r : summary.results) {
    all.insert(all.end(), r.outcomes.begin(), r.outcomes.end());
  }
  summary.exit_code = exit_code(all);
  return summary;
}

}  // namespace distpair
