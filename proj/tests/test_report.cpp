#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "distpair/check_outcome.hpp"
#include "distpair/config.hpp"
#include "distpair/experiments.hpp"
#include "distpair/parallel.hpp"
#include "distpair/report.hpp"

using namespace distpair;
namespace fs = std::filesystem;

namespace {

CheckOutcome outcome(std::string name, Verdict v) {
  CheckOutcome o;
  o.name = std::move(name);
  o.verdict = v;
  o.residual = 0.1;
  o.tolerance = 1.0;
  return o;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("distpair-test-" + name);
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("verdict rules") {
  CHECK(decide(0.5, 1.0, true) == Verdict::pass);
  CHECK(decide(1.0, 1.0, true) == Verdict::pass);
  CHECK(decide(1.5, 1.0, true) == Verdict::fail);
  CHECK(decide(0.5, 1.0, false) == Verdict::indeterminate);
  CHECK(decide(1.5, 1.0, false) == Verdict::indeterminate);
  CHECK(decide(NAN, 1.0, true) == Verdict::fail);
  CHECK(to_string(Verdict::indeterminate) == "INDETERMINATE");

  const Verdict all[] = {Verdict::pass, Verdict::fail, Verdict::indeterminate};
  for (Verdict a : all) {
    for (Verdict b : all) {
      const std::vector<CheckOutcome> v{outcome("a", a), outcome("b", b)};
      const bool any_fail = a == Verdict::fail || b == Verdict::fail;
      const bool any_ind = a == Verdict::indeterminate || b == Verdict::indeterminate;
      const Verdict expect = any_fail ? Verdict::fail : any_ind ? Verdict::indeterminate : Verdict::pass;
      CHECK(aggregate(v) == expect);
      CHECK(exit_code(v) == (any_fail ? 1 : any_ind ? 3 : 0));
    }
  }
  CHECK(aggregate(std::vector<CheckOutcome>{}) == Verdict::pass);
}

TEST_CASE("digests") {
  CHECK(digest("") == "cbf29ce484222325");
  CHECK(digest("a") == "af63dc4c8601ec8c");
  CHECK(DigestBuilder().add("x", 0.1).str() == DigestBuilder().add("x", 0.1).str());
  CHECK(DigestBuilder().add("x", 0.1).str() != DigestBuilder().add("x", 0.1 + 1e-17 * 10).str());
  CHECK(DigestBuilder().add("x", "1").str() != DigestBuilder().add("x", 1.0).add("y", "").str());
}

TEST_CASE("report JSON layout") {
  RunConfig config;
  config.experiments = {"moments"};
  ExperimentResult r{"moments", {outcome("first", Verdict::pass), outcome("second", Verdict::indeterminate)}, ""};
  r.outcomes[0].residual = 0.1;
  r.outcomes[0].details.push_back(DetailRow{}.add("probe", std::string("caf\xc3\xa9")).add("value", NAN));
  r.outcomes[1].residual = 1.0 / 3.0;
  const std::vector<ExperimentResult> results{r};
  const std::string text = report_json(config, results);

  for (char c : text) CHECK(static_cast<unsigned char>(c) < 0x80);
  CHECK(text.find("\"residual\": 0.10000000000000001") != std::string::npos);
  CHECK(text.find("\"residual\": 0.33333333333333331") != std::string::npos);

  const auto j = nlohmann::ordered_json::parse(text);
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"schema", "verdict", "exit_code", "config", "experiments"});
  CHECK(j["verdict"] == "INDETERMINATE");
  CHECK(j["exit_code"] == 3);
  const auto& e = j["experiments"][0];
  keys.clear();
  for (const auto& [k, v] : e.items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"name", "verdict", "csv", "checks"});
  CHECK(e["csv"] == "moments.csv");
  const auto& c = e["checks"][0];
  keys.clear();
  for (const auto& [k, v] : c.items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"name", "verdict", "residual", "tolerance", "inputs_digest", "details"});
  CHECK(c["details"][0]["value"].is_null());
  CHECK(c["details"][0]["probe"] == "caf\xc3\xa9");
  CHECK(text.find("caf\\u00e9") != std::string::npos);
  CHECK(j["config"]["experiments"] == "moments");
  CHECK(report_json(config, results) == text);
}

TEST_CASE("outcome CSV") {
  CheckOutcome a = outcome("x,y", Verdict::pass);
  a.details.push_back(DetailRow{}.add("p", std::string("say \"hi\"")).add("v", 0.5));
  CheckOutcome b = outcome("z", Verdict::pass);
  b.details.push_back(DetailRow{}.add("w", 2.0).add("v", 1.0));
  const std::vector<CheckOutcome> v{a, b};
  CHECK(outcomes_csv(v) ==
        "check,p,v,w\n"
        "\"x,y\",\"say \"\"hi\"\"\",0.5,\n"
        "z,,1,2\n");
}

TEST_CASE("report files") {
  RunConfig config;
  config.experiments = {"moments"};
  const std::vector<ExperimentResult> results{{"moments", {outcome("a", Verdict::pass)}, "n\n1\n"}};
  const fs::path dir = scratch("emit") / "nested";
  emit_report(dir, config, results);
  CHECK(slurp(dir / "moments.csv") == "n\n1\n");
  CHECK(slurp(dir / "report.json") == report_json(config, results));
  const fs::path blocker = scratch("blocker");
  std::ofstream(blocker) << "file";
  CHECK_THROWS_AS(emit_report(blocker / "sub", config, results), ReportError);
  fs::remove_all(dir.parent_path());
  fs::remove(blocker);
}

TEST_CASE("configuration") {
  RunConfig c;
  apply_setting(c, "tol", "1e-8");
  CHECK(c.tol == 1e-8);
  apply_setting(c, "eps_ladder", "0.4,0.2,0.1");
  CHECK(c.eps_ladder.values == std::vector<double>{0.4, 0.2, 0.1});
  CHECK(c.eps_ladder.extrapolation_order == 2);
  apply_setting(c, "experiments", "moments,semiclassical");
  CHECK(c.experiments.size() == 2);
  apply_setting(c, "seed", "42");
  CHECK(c.seed == 42);
  apply_setting(c, "battery_centers", "0,1");
  CHECK(c.battery.centers == std::vector<double>{0.0, 1.0});
  CHECK_THROWS_AS(apply_setting(c, "nope", "1"), ConfigError);
  CHECK_THROWS_AS(apply_setting(c, "tol", "abc"), ConfigError);
  CHECK_THROWS_AS(apply_setting(c, "tol", "1e-8x"), ConfigError);
  CHECK_THROWS_AS(apply_setting(c, "max_m", "2.5"), ConfigError);
  CHECK_THROWS_AS(apply_setting(c, "eps_ladder", ""), ConfigError);
  validate(c);

  RunConfig bad;
  CHECK_THROWS_AS(validate(bad), ConfigError);
  bad.experiments = {"unknown"};
  CHECK_THROWS_AS(validate(bad), ConfigError);
  bad.experiments = {"moments"};
  bad.tol = -1.0;
  CHECK_THROWS_AS(validate(bad), ConfigError);
  bad.tol.reset();
  bad.eps_ladder.values = {0.1, 0.2, 0.05};
  CHECK_THROWS_AS(validate(bad), ConfigError);

  const fs::path file = scratch("config.txt");
  std::ofstream(file) << "# comment\n\nlambda = 7\nmax_m=2\n";
  RunConfig f;
  load_config_file(f, file);
  CHECK(f.lambda == 7.0);
  CHECK(f.max_m == 2);
  std::ofstream(file) << "lambda\n";
  CHECK_THROWS_AS(load_config_file(f, file), ConfigError);
  fs::remove(file);
  CHECK_THROWS_AS(load_config_file(f, scratch("missing.txt")), ConfigError);

  const auto d = describe(c);
  CHECK(d.front().first == "experiments");
  CHECK(format_number(0.1) == "0.10000000000000001");
}

TEST_CASE("experiment expansion") {
  const auto all = expand_experiments({"all"});
  CHECK(all.size() == experiment_names().size() - 1);
  CHECK(expand_experiments({"moments", "all", "moments"}).front() == "moments");
  CHECK(expand_experiments({"moments", "moments"}).size() == 1);
  CHECK_THROWS_AS(run_experiment("all", RunConfig{}), ConfigError);
  CHECK_THROWS_AS(run_experiment("bogus", RunConfig{}), ConfigError);
}

TEST_CASE("report is independent of the worker count") {
  RunConfig c;
  c.experiments = {"identity-11-12", "series-accuracy"};
  const fs::path one = scratch("threads1");
  const fs::path seven = scratch("threads7");
  setenv("DISTPAIR_THREADS", "1", 1);
  CHECK(worker_count() == 1);
  c.out_dir = one.string();
  CHECK(run(c).exit_code == 0);
  setenv("DISTPAIR_THREADS", "7", 1);
  CHECK(worker_count() == 7);
  c.out_dir = seven.string();
  CHECK(run(c).exit_code == 0);
  unsetenv("DISTPAIR_THREADS");
  CHECK(slurp(one / "report.json") == slurp(seven / "report.json"));
  CHECK(slurp(one / "series-accuracy.csv") == slurp(seven / "series-accuracy.csv"));
  fs::remove_all(one);
  fs::remove_all(seven);
}

TEST_CASE("parallel helpers") {
  const auto squares = parallel_map<int>(100, [](std::size_t i) { return static_cast<int>(i * i); });
  CHECK(squares[99] == 9801);
  CHECK_THROWS_AS(parallel_for(10, [](std::size_t i) { if (i == 3) throw std::runtime_error("x"); }),
                  std::runtime_error);
  parallel_for(0, [](std::size_t) { throw std::runtime_error("never"); });
}
