#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "phaseinv/reports.hpp"

using namespace phaseinv;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("phaseinv_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

int run(const std::string& args) {
  const std::string cmd = std::string(PHASEINV_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path write_config(const fs::path& dir, const std::string& text) {
  const auto path = dir / "run.cfg";
  std::ofstream(path) << text;
  return path;
}

nlohmann::json without_metadata(const fs::path& report) {
  auto j = nlohmann::json::parse(slurp(report));
  j.erase("metadata");
  return j;
}

// A quick campaign: 10 local searches per iteration, 4 kept.
const std::string kQuick = "potential = q1\nk = 2\nL = 500\ngamma = 0.02\nnu = 0.4\n";

}  // namespace

TEST_CASE("forward reproduces the published table") {
  const auto dir = scratch("forward");
  const auto cfg = write_config(dir, "mode = forward\npotential = q3\nk = 1, 4\n");
  REQUIRE(run("forward -c " + cfg.string() + " -o " + dir.string()) == 0);
  const auto table = slurp(dir / "phase_shifts.tsv");
  CHECK(table.rfind("l\tk=1.00\tk=4.00\n", 0) == 0);
  CHECK(table.find("\n0\t-0.66496\t-0.62217\n") != std::string::npos);
  CHECK(table.find("\n17\t0.00000\t1.56437\n") != std::string::npos);
}

TEST_CASE("forward output is the library output") {
  const auto dir = scratch("plumbing");
  const auto cfg = write_config(dir, "potential = q2\nk = 2\n");
  REQUIRE(run("forward --config " + cfg.string() + " --out " + dir.string()) == 0);
  const auto j = nlohmann::json::parse(slurp(dir / "phase_shifts.json"));
  const auto lib = phase_shifts(LayeredPotential({8.0}, {-4.0}), 2.0, 30);
  CHECK(j["columns"][0]["shifts"].get<std::vector<double>>() == lib.shifts);
  CHECK(slurp(dir / "phase_shifts.tsv") == format_forward_table({lib}));
}

TEST_CASE("bad configurations exit with 1") {
  const auto dir = scratch("bad");
  const auto cfg = write_config(dir, "gamma = 1.5\n");
  CHECK(run("invert -c " + cfg.string() + " -o " + dir.string()) == 1);
  CHECK_FALSE(fs::exists(dir / "report.json"));
  CHECK(run("forward -c " + (dir / "missing.cfg").string()) != 0);
  CHECK(run("") != 0);
}

TEST_CASE("inversion files are reproducible and independent of the worker count") {
  const auto dir = scratch("invert");
  const auto cfg = write_config(dir, kQuick + "j_max = 2\n");
  const auto a = dir / "a", b = dir / "b", c = dir / "c";
  const int code = run("invert -c " + cfg.string() + " -s 3 -w 1 -o " + a.string());
  CHECK((code == 0 || code == 2 || code == 3));
  CHECK(run("invert -c " + cfg.string() + " -s 3 -w 1 -o " + b.string()) == code);
  CHECK(run("invert -c " + cfg.string() + " -s 3 -w 8 -o " + c.string()) == code);

  for (const char* f : {"stability_indices.tsv", "recovered.tsv"}) {
    CHECK(slurp(a / f) == slurp(b / f));
    CHECK(slurp(a / f) == slurp(c / f));
  }
  CHECK(without_metadata(a / "report.json") == without_metadata(b / "report.json"));
  CHECK(without_metadata(a / "report.json") == without_metadata(c / "report.json"));

  const auto j = nlohmann::json::parse(slurp(a / "report.json"));
  CHECK(j["schema_version"] == kReportSchemaVersion);
  CHECK(j["seed"] == 3);
  CHECK(j["metadata"]["workers"] == 1);
  CHECK(j["metadata"]["output_dir"] == a.string());
  const std::string verdict = j["runs"][0]["verdict"];
  CHECK(code == exit_code(verdict == "stable"     ? Verdict::kStable
                          : verdict == "unstable" ? Verdict::kUnstable
                                                  : Verdict::kExhausted));
}

TEST_CASE("exit codes follow the verdict") {
  const auto dir = scratch("codes");
  // nu * gamma * L = 1: a singleton set is stable after one iteration.
  auto cfg = write_config(dir, "potential = q1\nk = 2\nL = 625\n");
  CHECK(run("invert -c " + cfg.string() + " -o " + (dir / "stable").string()) == 0);
  const auto table = slurp(dir / "stable" / "stability_indices.tsv");
  CHECK(table == "k\titeration\th=0.00\n2.00\t1\t0.000000\n");

  cfg = write_config(dir, kQuick + "epsilon = 1e-12\nbeta = 1e12\nj_max = 2\n");
  CHECK(run("invert -c " + cfg.string() + " -o " + (dir / "unstable").string()) == 2);

  cfg = write_config(dir, kQuick + "epsilon = 1e-12\nbeta = 1.0000000001\nj_max = 1\n");
  CHECK(run("invert -c " + cfg.string() + " -o " + (dir / "exhausted").string()) == 3);
}
