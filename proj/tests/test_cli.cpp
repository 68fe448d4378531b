#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

const fs::path kWork = fs::temp_directory_path() / "distpair-cli-test";

int run(const std::string& args) {
  const std::string cmd = std::string("\"") + DISTPAIR_BIN + "\" " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string out_flag(const std::string& name) { return "--out \"" + (kWork / name).string() + "\""; }

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct Workspace {
  Workspace() {
    fs::remove_all(kWork);
    fs::create_directories(kWork);
  }
  ~Workspace() { fs::remove_all(kWork); }
};

}  // namespace

TEST_CASE_FIXTURE(Workspace, "usage errors exit with 2") {
  CHECK(run("") == 2);
  CHECK(run("no-such-experiment " + out_flag("a")) == 2);
  CHECK(run("moments --tol abc " + out_flag("a")) == 2);
  CHECK(run("moments --tol -1 " + out_flag("a")) == 2);
  CHECK(run("moments --eps-ladder 0.1,0.2 " + out_flag("a")) == 2);
  CHECK(run("moments --config \"" + (kWork / "missing.cfg").string() + "\"") == 2);
  CHECK(run("moments --bogus-flag") == 2);
  CHECK(!fs::exists(kWork / "a"));
}

TEST_CASE_FIXTURE(Workspace, "verdict exit codes") {
  CHECK(run("identity-11-12 " + out_flag("pass")) == 0);
  CHECK(fs::exists(kWork / "pass" / "report.json"));
  CHECK(fs::exists(kWork / "pass" / "identity-11-12.csv"));
  CHECK(run("noise-split " + out_flag("fail")) == 1);

  const fs::path cfg = kWork / "tight.cfg";
  std::ofstream(cfg) << "# unreachable tolerance\ntol = 1e-30\nexperiments = identity-11-12\n";
  CHECK(run("--config \"" + cfg.string() + "\" " + out_flag("tight")) == 3);
  CHECK(run("--config \"" + cfg.string() + "\" --tol 1e-8 " + out_flag("loose")) == 0);
}

TEST_CASE_FIXTURE(Workspace, "unwritable output directory exits with 2") {
  std::ofstream(kWork / "blocker") << "x";
  CHECK(run("identity-11-12 --out \"" + (kWork / "blocker" / "sub").string() + "\"") == 2);
}

TEST_CASE_FIXTURE(Workspace, "moment CSV and byte-identical re-runs") {
  CHECK(run("moments --max-m 3 --eps 0.1 " + out_flag("m1")) == 0);
  CHECK(run("moments --max-m 3 --eps 0.1 " + out_flag("m2")) == 0);
  const std::string first = slurp(kWork / "m1" / "report.json");
  CHECK(!first.empty());
  CHECK(first == slurp(kWork / "m2" / "report.json"));
  CHECK(slurp(kWork / "m1" / "moments.csv") == slurp(kWork / "m2" / "moments.csv"));

  std::ifstream csv(kWork / "m1" / "moments.csv");
  std::string line;
  std::getline(csv, line);
  REQUIRE(line == "n,eps,numeric,closed_form,abs_err");
  int rows = 0;
  double worst = 0.0;
  while (std::getline(csv, line)) {
    ++rows;
    worst = std::max(worst, std::stod(line.substr(line.rfind(',') + 1)));
  }
  CHECK(rows == 8);
  CHECK(worst < 1e-7);
}
