#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "doctest.h"

// End-to-end tests driving the installed command-line binary (path injected
// by the build) as a subprocess and inspecting exit codes and emitted files.

namespace fs = std::filesystem;

namespace {

struct CliResult {
  int exit_code = -1;
  std::string output;  // stdout + stderr
};

CliResult run_cli(const std::string& args) {
  const std::string cmd = std::string(CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CliResult result;
  char buf[4096];
  size_t got = 0;
  while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) result.output.append(buf, got);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

/// Fresh scratch directory per test, removed on destruction.
struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("optomech_cli_" + tag + "_" + std::to_string(getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string str() const { return path.string(); }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

std::set<std::string> dir_files(const fs::path& dir) {
  std::set<std::string> names;
  for (const auto& entry : fs::directory_iterator(dir)) names.insert(entry.path().filename());
  return names;
}

/// Cheap oracle-capable scenario shared by the end-to-end tests.
std::string write_small_config(const TempDir& dir, const std::string& extra = "") {
  const fs::path p = dir.path / "small.cfg";
  std::ofstream out(p);
  out << "scenario.name = small\n"
         "params.g0 = 0.3\n"
         "state.field = number\n"
         "state.n = 1\n"
         "state.Gamma = 1\n"
         "grid.t_end = 6.283185307179586\n"
         "grid.samples = 41\n"
         "outputs = phonon_mean\n"
         "route = both\n"
         "sim.dim_field = 3\n"
         "sim.dim_mech = 24\n"
      << extra;
  return p.string();
}

}  // namespace

TEST_CASE("help and scenario listing succeed") {
  CHECK(run_cli("--help").exit_code == 0);
  const CliResult list = run_cli("list-scenarios");
  CHECK(list.exit_code == 0);
  for (const char* name : {"fig1", "fig2", "fig7", "fig9", "mandel-linear"})
    CHECK(list.output.find(name) != std::string::npos);
}

TEST_CASE("config problems exit with code 2") {
  TempDir dir("cfgerr");
  CHECK(run_cli("run no_such_scenario").exit_code == 2);
  CHECK(run_cli("frobnicate").exit_code == 2);
  CHECK(run_cli("run").exit_code == 2);  // missing positional

  const fs::path bad = dir.path / "bad.cfg";
  std::ofstream(bad) << "bogus.key = 1\n";
  const CliResult r = run_cli("run " + bad.string());
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("bogus.key") != std::string::npos);

  CHECK(run_cli("run fig1 --dims notdims").exit_code == 2);
  CHECK(run_cli("wigner fig2 --times 1").exit_code == 2);  // analytic-only route
}

TEST_CASE("numerical failures exit with code 3") {
  TempDir dir("numerr");
  // n = 4 cannot be represented in a 3-dimensional field space.
  const CliResult r = run_cli("run fig1 --dims 3,64 --out-dir " + dir.str());
  CHECK(r.exit_code == 3);
}

TEST_CASE("comparison failures exit with code 4") {
  TempDir dir("cmperr");
  const std::string cfg = write_small_config(dir, "compare.tolerance = 1e-15\n");
  const CliResult r = run_cli("run " + cfg + " --out-dir " + dir.str());
  CHECK(r.exit_code == 4);
  CHECK(r.output.find("FAIL") != std::string::npos);
}

TEST_CASE("run writes one CSV per observable plus a report when both routes ran") {
  TempDir dir("run");
  const std::string cfg = write_small_config(dir);
  const CliResult r = run_cli("run " + cfg + " --out-dir " + dir.str());
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("PASS") != std::string::npos);

  const std::string csv = slurp(dir.path / "small_phonon_mean.csv");
  CHECK(csv.rfind("t,value_analytic,value_oracle\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 42);  // header + 41 rows
  // Both value columns populated on the first data row: t=0, analytic exactly
  // |Gamma|^2 = 1, oracle within truncation error of it.
  const auto line_start = csv.find('\n') + 1;
  const std::string first_row = csv.substr(line_start, csv.find('\n', line_start) - line_start);
  CHECK(first_row.rfind("0,1,", 0) == 0);
  CHECK(std::stod(first_row.substr(4)) == doctest::Approx(1.0).epsilon(1e-6));

  const std::string report = slurp(dir.path / "small_report.txt");
  CHECK(report.find("phonon_mean") != std::string::npos);
  CHECK(report.find("overall: PASS") != std::string::npos);
}

TEST_CASE("analytic-only run leaves the oracle column blank and writes no report") {
  TempDir dir("analytic");
  const std::string cfg = write_small_config(dir, "route = analytic\n");
  CHECK(run_cli("run " + cfg + " --out-dir " + dir.str()).exit_code == 0);
  const std::string csv = slurp(dir.path / "small_phonon_mean.csv");
  CHECK(csv.find("0,1,\n") != std::string::npos);
  CHECK(!fs::exists(dir.path / "small_report.txt"));
}

TEST_CASE("empty output set produces no files and succeeds") {
  TempDir dir("empty");
  const std::string cfg = write_small_config(dir, "outputs =\n");
  CHECK(run_cli("run " + cfg + " --out-dir " + dir.str() + "/out").exit_code == 0);
  CHECK(!fs::exists(dir.path / "out"));
}

TEST_CASE("two runs of the same config produce byte-identical CSVs") {
  TempDir dir("determinism");
  const std::string cfg = write_small_config(dir);
  CHECK(run_cli("run " + cfg + " --out-dir " + dir.str() + "/a").exit_code == 0);
  CHECK(run_cli("run " + cfg + " --out-dir " + dir.str() + "/b").exit_code == 0);
  CHECK(slurp(dir.path / "a/small_phonon_mean.csv") == slurp(dir.path / "b/small_phonon_mean.csv"));
  CHECK(slurp(dir.path / "a/small_report.txt") == slurp(dir.path / "b/small_report.txt"));
}

TEST_CASE("a single-value sweep reproduces the plain run, filename tag aside") {
  TempDir dir("sweep1");
  const std::string cfg = write_small_config(dir, "route = analytic\n");

  CHECK(run_cli("sweep " + cfg + " --param g0 --values 0.25 --out-dir " + dir.str() + "/sweep")
            .exit_code == 0);

  const fs::path override_cfg = dir.path / "g025.cfg";
  std::ofstream(override_cfg) << slurp(dir.path / "small.cfg") << "params.g0 = 0.25\n";
  CHECK(run_cli("run " + override_cfg.string() + " --out-dir " + dir.str() + "/run").exit_code ==
        0);

  CHECK(slurp(dir.path / "sweep/small_g00p25_phonon_mean.csv") ==
        slurp(dir.path / "run/small_phonon_mean.csv"));
}

TEST_CASE("sweeps fan out one file set per value and an empty sweep is a no-op") {
  TempDir dir("sweep");
  const std::string cfg = write_small_config(dir, "route = analytic\n");
  const CliResult r =
      run_cli("sweep " + cfg + " --param g0 --values 0.1,0.3 --out-dir " + dir.str() + "/out");
  CHECK(r.exit_code == 0);
  CHECK(dir_files(dir.path / "out") ==
        std::set<std::string>{"small_g00p1_phonon_mean.csv", "small_g00p3_phonon_mean.csv"});
  // Distinct couplings, distinct trajectories.
  CHECK(slurp(dir.path / "out/small_g00p1_phonon_mean.csv") !=
        slurp(dir.path / "out/small_g00p3_phonon_mean.csv"));

  CHECK(run_cli("sweep " + cfg + " --param g0 --out-dir " + dir.str() + "/none").exit_code == 0);
  CHECK(!fs::exists(dir.path / "none"));

  CHECK(run_cli("sweep " + cfg + " --param name --values 1").exit_code == 2);
}

TEST_CASE("wigner command writes grid CSVs for both subsystems") {
  TempDir dir("wigner");
  const std::string cfg = write_small_config(dir);
  const CliResult r = run_cli("wigner " + cfg + " --times 0,1.5 --grid=-4,4,21 --out-dir " +
                              dir.str() + "/w");
  CHECK(r.exit_code == 0);
  CHECK(dir_files(dir.path / "w") ==
        std::set<std::string>{"small_wigner_mech_t0.csv", "small_wigner_field_t0.csv",
                              "small_wigner_mech_t1p5.csv", "small_wigner_field_t1p5.csv"});
  const std::string csv = slurp(dir.path / "w/small_wigner_mech_t0.csv");
  CHECK(csv.rfind("x,p,w\n", 0) == 0);
  CHECK(csv.find("\nsummary,") != std::string::npos);
  // 21x21 grid rows + header + summary.
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 21 * 21 + 2);
}

TEST_CASE("converge prints the dimension-doubling table") {
  TempDir dir("converge");
  const std::string cfg = write_small_config(dir, "sim.dim_mech = 8\ngrid.samples = 9\n");
  const CliResult r = run_cli("converge " + cfg);
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("dim_field") != std::string::npos);
  CHECK(r.output.find("(first stage)") != std::string::npos);
  CHECK(r.output.find("converged at") != std::string::npos);
}
