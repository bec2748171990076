#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "heatwell/config.hpp"
#include "heatwell/diagnostics.hpp"
#include "heatwell/solver.hpp"
#include "heatwell/trace_io.hpp"

using namespace heatwell;
namespace fs = std::filesystem;

namespace {

const fs::path kWork = fs::temp_directory_path() / "heatwell_cli_test";

void reset_workdir() {
  fs::remove_all(kWork);
  fs::create_directories(kWork);
}

fs::path write_file(const std::string& name, const std::string& text) {
  const fs::path p = kWork / name;
  std::ofstream out(p, std::ios::binary);
  out << text;
  return p;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int run_cli(const std::string& args) {
  const std::string cmd =
      std::string(HEATWELL_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

template <typename F>
std::string error_of(F&& f) {
  try {
    f();
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

const char* kSmallConfig = R"({
  "params": {"n": 3, "p": 3.0},
  "grid": {"r_max": 10.0, "num_points": 128},
  "solver": {"dt_init": 1e-3, "dt_min": 1e-8, "s_max": 0.5},
  "initial": {"family": "gaussian", "a": 0.5, "b": 0.5},
  "sweep": {"a_values": [0.5], "b_values": [0.5, 3.5]},
  "well_family": {"a_min": 0.3, "a_max": 1.5, "a_count": 5},
  "welldepth": {"eps_values": [0.1]}
})";

}  // namespace

TEST_CASE("empty document yields the documented defaults") {
  const ExperimentConfig cfg = parse_config("{}", "inline");
  CHECK(cfg.params.n == 3);
  CHECK(cfg.params.p == 3.0);
  CHECK(cfg.grid.r_max == 16.0);
  CHECK(cfg.grid.num_points == 4096);
  CHECK(cfg.solver.dt_init == 1e-3);
  CHECK(cfg.solver.s_max == 20.0);
  CHECK(cfg.initial.family == "gaussian");
  CHECK(cfg.initial.a == 0.5);
  CHECK(cfg.initial.b == 0.5);
  CHECK(cfg.sweep.b_values.size() == 5);
  CHECK(cfg.well_family.a_count == 40);
  CHECK(cfg.eps_values == std::vector<double>{0.01, 0.1, 0.5});
}

TEST_CASE("full document overrides every section") {
  const ExperimentConfig cfg = parse_config(kSmallConfig, "inline");
  CHECK(cfg.grid.num_points == 128);
  CHECK(cfg.solver.dt_min == 1e-8);
  CHECK(cfg.solver.s_max == 0.5);
  CHECK(cfg.sweep.b_values == std::vector<double>{0.5, 3.5});
  CHECK(cfg.well_family.a_min == 0.3);
  CHECK(cfg.well_family.a_count == 5);
  CHECK(cfg.eps_values == std::vector<double>{0.1});
}

TEST_CASE("errors name the offending field") {
  CHECK(error_of([] {
          parse_config(R"({"params": {"n": 3, "p": 6.0}})", "x");
        }).find("params.p") != std::string::npos);
  CHECK(error_of([] {
          parse_config(R"({"grid": {"r_max": 50.0}})", "x");
        }).find("grid.r_max") != std::string::npos);
  CHECK(error_of([] {
          parse_config(R"({"grid": {"num_points": 4}})", "x");
        }).find("grid.num_points") != std::string::npos);
  CHECK(error_of([] {
          parse_config(R"({"solver": {"dt_init": 1e-6, "dt_min": 1e-3}})", "x");
        }).find("solver.dt_min") != std::string::npos);
  CHECK(error_of([] {
          parse_config(R"({"initial": {"family": "bump"}})", "x");
        }).find("initial.family") != std::string::npos);
  CHECK(error_of([] {
          parse_config(R"({"initial": {"a": 0.125}})", "x");
        }).find("initial.a") != std::string::npos);
  CHECK(error_of([] {
          parse_config(R"({"sweep": {"a_values": [0.5, 0.1]}})", "x");
        }).find("sweep.a_values[1]") != std::string::npos);
  CHECK(error_of([] {
          parse_config(R"({"welldepth": {"eps_values": [-0.1]}})", "x");
        }).find("eps_values[0]") != std::string::npos);
  CHECK(error_of([] {
          parse_config(R"({"params": {"p": "three"}})", "x");
        }).find("params.p") != std::string::npos);
}

TEST_CASE("unknown keys are rejected, not ignored") {
  CHECK(error_of([] {
          parse_config(R"({"solvr": {}})", "x");
        }).find("solvr") != std::string::npos);
  CHECK(error_of([] {
          parse_config(R"({"solver": {"dt": 1e-3}})", "x");
        }).find("solver.dt") != std::string::npos);
  CHECK(error_of([] {
          parse_config(R"({"grid": {"r_max": 10.0, "points": 64}})", "x");
        }).find("grid.points") != std::string::npos);
}

TEST_CASE("malformed json and missing files raise ConfigError") {
  CHECK_THROWS_AS(parse_config("{", "x"), ConfigError);
  CHECK_THROWS_AS(parse_config("[1,2]", "x"), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/heatwell.json"), ConfigError);
}

TEST_CASE("fmt17 round-trips doubles exactly") {
  for (double x : {1.0 / 3.0, 0.1, 1e22, 5e-324, 0.0, -2.5e-8,
                   8.5730017810851097, 1.7976931348623157e308}) {
    const std::string s = fmt17(x);
    CHECK(std::strtod(s.c_str(), nullptr) == x);
  }
}

TEST_CASE("trace csv layout") {
  SimulationTrace trace;
  trace.params = Parameters(3, 3.0);
  TraceRow row;
  row.s = 0.5;
  row.t = 0.6487212707001282;
  row.energy = 1.25;
  trace.rows.push_back(row);
  std::ostringstream out;
  write_trace_csv(out, trace, {0.0});
  std::istringstream lines(out.str());
  std::string header, first;
  std::getline(lines, header);
  CHECK(header ==
        "s,t,dt,E,I,l2k_sq,h1k_sq,sup_norm,M,M_prime,M_double_prime,"
        "dissipation_accum,energy_residual");
  std::getline(lines, first);
  CHECK(first.substr(0, 4) == "0.5,");
  CHECK_THROWS_AS(write_trace_csv(out, trace, {0.0, 0.0}),
                  std::invalid_argument);
}

TEST_CASE("sweep csv layout leaves T_s_mid empty without blow-up") {
  SweepRow global;
  global.a = 0.5;
  global.b = 0.5;
  global.classification = "InWellHeuristic";
  global.verdict = "Global";
  SweepRow blowup = global;
  blowup.b = 3.5;
  blowup.classification = "ExteriorCertified";
  blowup.verdict = "BlowUp";
  blowup.ts_mid = 1.25;
  std::ostringstream out;
  write_sweep_csv(out, {global, blowup});
  std::istringstream lines(out.str());
  std::string header, l1, l2;
  std::getline(lines, header);
  std::getline(lines, l1);
  std::getline(lines, l2);
  CHECK(header == "a,b,E0,I0,classification,verdict,T_s_mid,max_h1k,status");
  CHECK(l1.find(",Global,,") != std::string::npos);  // empty T_s_mid cell
  CHECK(l2.find(",BlowUp,1.25,") != std::string::npos);
  CHECK(l1.substr(l1.size() - 3) == ",ok");
}

TEST_CASE("cli: usage and config failures exit with code 1") {
  reset_workdir();
  CHECK(run_cli("") == 1);                    // missing subcommand
  CHECK(run_cli("--help") == 0);
  CHECK(run_cli("frobnicate") == 1);          // unknown subcommand
  CHECK(run_cli("evolve --config /nonexistent/x.json") == 1);
  write_file("bad.json", R"({"grid": {"num_points": 4}})");
  CHECK(run_cli("evolve --config " + (kWork / "bad.json").string()) == 1);
}

TEST_CASE("cli: functionals, evolve, welldepth, check produce artifacts") {
  reset_workdir();
  const fs::path cfg = write_file("small.json", kSmallConfig);
  const fs::path out = kWork / "artifacts" / "nested";

  CHECK(run_cli("functionals --config " + cfg.string() + " --output " +
                out.string()) == 0);
  CHECK(fs::exists(out / "functionals.json"));
  const std::string fj = read_file(out / "functionals.json");
  CHECK(fj.find("\"classification\"") != std::string::npos);

  CHECK(run_cli("evolve --config " + cfg.string() + " --output " +
                out.string()) == 0);
  const std::string trace = read_file(out / "evolve_trace.csv");
  CHECK(trace.rfind("s,t,dt,E,I,l2k_sq,h1k_sq,sup_norm,M,M_prime,"
                    "M_double_prime,dissipation_accum,energy_residual\n",
                    0) == 0);
  const std::string oj = read_file(out / "evolve_outcome.json");
  CHECK(oj.find("\"verdict\"") != std::string::npos);

  CHECK(run_cli("welldepth --config " + cfg.string() + " --output " +
                out.string()) == 0);
  CHECK(read_file(out / "welldepth.json").find("\"lemma33_all_pass\": true") !=
        std::string::npos);

  CHECK(run_cli("check --config " + cfg.string() + " --output " +
                out.string()) == 0);
  CHECK(read_file(out / "check_report.json").find("\"all_pass\": true") !=
        std::string::npos);
}

TEST_CASE("cli: sweep is deterministic across runs and thread counts") {
  reset_workdir();
  const fs::path cfg = write_file("small.json", kSmallConfig);
  const fs::path o1 = kWork / "s1";
  const fs::path o2 = kWork / "s2";
  const fs::path o3 = kWork / "s3";
  CHECK(run_cli("sweep --config " + cfg.string() + " --threads 2 --seed 7 " +
                "--output " + o1.string()) == 0);
  CHECK(run_cli("sweep --config " + cfg.string() + " --threads 2 --seed 7 " +
                "--output " + o2.string()) == 0);
  CHECK(run_cli("sweep --config " + cfg.string() + " --threads 1 --seed 7 " +
                "--output " + o3.string()) == 0);
  const std::string s1 = read_file(o1 / "sweep.csv");
  CHECK(s1 == read_file(o2 / "sweep.csv"));
  CHECK(s1 == read_file(o3 / "sweep.csv"));
  CHECK(s1.rfind("a,b,E0,I0,classification,verdict,T_s_mid,max_h1k,status\n",
                 0) == 0);
}
