#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "kinetic/cli.hpp"
#include "kinetic/errors.hpp"

using namespace kinetic;
namespace fs = std::filesystem;

namespace {

const fs::path kRoot = fs::temp_directory_path() / "kinetic_cli_test";

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

struct Result {
  int status;
  std::string err;
  fs::path out;
};

Result run(const std::string& name, const std::string& config, const std::string& extra = "") {
  fs::create_directories(kRoot);
  const fs::path cfg = kRoot / (name + ".ini"), out = kRoot / name, err = kRoot / (name + ".err");
  fs::remove_all(out);
  std::ofstream(cfg, std::ios::binary) << config;
  const std::string cmd = std::string(KINETIC_CLI_PATH) + " --config " + cfg.string() + " --out " + out.string() +
                          " " + extra + " 2> " + err.string() + " > /dev/null";
  const int raw = std::system(cmd.c_str());
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, slurp(err), out};
}

nlohmann::json read_json(const fs::path& p) { return nlohmann::json::parse(slurp(p)); }

const char* kM0 =
    "[run]\n"
    "command = m0-search\n"
    "[kernel]\n"
    "dim = 3\n"
    "gamma = 0\n"
    "angular = constant\n";

const char* kSweep =
    "[run]\n"
    "command = barrier-check\n"
    "seed = 7\n"
    "[kernel]\n"
    "operator = landau\n"
    "gamma = -3\n"
    "[quadrature]\n"
    "outer_radius = 7\n"
    "radial_nodes = 6\n"
    "angular_nodes = 8\n"
    "[barrier]\n"
    "m = 4\n"
    "count = 2\n";

}  // namespace

TEST_CASE("m0-search reports the threshold near 5") {
  const Result r = run("m0", kM0);
  REQUIRE(r.status == 0);
  const nlohmann::json j = read_json(r.out / "report.json");
  CHECK(j["parameter"] == "m0");
  CHECK(j["value"].get<double>() == doctest::Approx(5.0).epsilon(1e-3));
}

TEST_CASE("hydro-verdict emits the smooth row") {
  const Result r = run("hydro", "[run]\ncommand = hydro-verdict\n[hydro]\ngammas = 1\n");
  REQUIRE(r.status == 0);
  const std::string csv = slurp(r.out / "verdicts.csv");
  CHECK(csv.rfind("scenario,gamma,verdict,critical_gamma\n", 0) == 0);
  CHECK(csv.find("\nsmooth,1,excluded,1.7320508") != std::string::npos);
  CHECK(csv.find('\r') == std::string::npos);
}

TEST_CASE("empty config is a parse error with exit 1") {
  const Result r = run("empty", "");
  CHECK(r.status == 1);
  CHECK(r.err.find("parse error") != std::string::npos);
  CHECK(r.err.find(":1:") != std::string::npos);
}

TEST_CASE("unknown keys are rejected with their line number") {
  const Result r = run("unknown", "[run]\ncommand = hydro-verdict\n[hydro]\ngammas = 0\nflavour = 3\n");
  CHECK(r.status == 1);
  CHECK(r.err.find(":5:") != std::string::npos);
  CHECK(r.err.find("flavour") != std::string::npos);
}

TEST_CASE("malformed lines report their line number") {
  const Result r = run("malformed", "[run]\ncommand = hydro-verdict\n[hydro\ngammas = 0\n");
  CHECK(r.status == 1);
  CHECK(r.err.find(":3") != std::string::npos);
}

TEST_CASE("sections not used by the command are rejected") {
  const Result r = run("extra_section", std::string(kM0) + "[homog]\nn = 8\n");
  CHECK(r.status == 1);
  CHECK(r.err.find("homog") != std::string::npos);
}

TEST_CASE("infeasible delta search exits 2 with a null value") {
  const Result r = run("infeasible", "[run]\ncommand = delta-search\n[kernel]\noperator = landau\ngamma = -3\n"
                                     "[search]\nm = 0\n");
  CHECK(r.status == 2);
  const nlohmann::json j = read_json(r.out / "report.json");
  CHECK(j["value"].is_null());
  CHECK(read_json(r.out / "manifest.json")["exit_status"] == 2);
}

TEST_CASE("feasible delta search exits 0") {
  const Result r = run("feasible", "[run]\ncommand = delta-search\n[kernel]\noperator = landau\ngamma = -3\n"
                                   "[search]\nm = 5\n");
  REQUIRE(r.status == 0);
  CHECK(read_json(r.out / "report.json")["value"].get<double>() == doctest::Approx(std::sqrt(2.0 / 7.0)).epsilon(1e-3));
}

TEST_CASE("artifacts are byte-identical across runs and thread counts") {
  const Result a = run("det_a", kSweep);
  const Result b = run("det_b", kSweep, "--threads 3");
  REQUIRE(a.status == 0);
  REQUIRE(b.status == 0);
  for (const char* name : {"contact_sweep.csv", "summary.json", "config.ini"})
    CHECK(slurp(a.out / name) == slurp(b.out / name));
  const Result c = run("det_c", kSweep, "--seed 8");
  REQUIRE(c.status == 0);
  CHECK(slurp(a.out / "contact_sweep.csv") != slurp(c.out / "contact_sweep.csv"));
  CHECK(read_json(c.out / "manifest.json")["seed"] == 8);
}

TEST_CASE("manifest lists the echoed config and every artifact") {
  const Result r = run("manifest", kSweep);
  REQUIRE(r.status == 0);
  CHECK(slurp(r.out / "config.ini") == kSweep);
  const nlohmann::json m = read_json(r.out / "manifest.json");
  CHECK(m["command"] == "barrier-check");
  CHECK(m["version"].is_string());
  CHECK(m["wall_time_seconds"].get<double>() >= 0.0);
  CHECK(m["config"] == "config.ini");
  for (const auto& name : m["artifacts"]) CHECK(fs::exists(r.out / name.get<std::string>()));
  // The echoed config reproduces the run.
  const Result again = run("manifest_rerun", slurp(r.out / "config.ini"));
  REQUIRE(again.status == 0);
  CHECK(slurp(again.out / "contact_sweep.csv") == slurp(r.out / "contact_sweep.csv"));
}

TEST_CASE("landau-eval writes one row per point") {
  const Result r = run("leval", "[run]\ncommand = landau-eval\n[kernel]\ngamma = -3\n"
                                "[field]\ntype = gaussian\nrho = 1\ntheta = 1\n"
                                "[points]\nv = 0,0,0; 1,0.5,-0.5\n");
  REQUIRE(r.status == 0);
  std::istringstream is(slurp(r.out / "values.csv"));
  std::string line;
  std::getline(is, line);
  CHECK(line == "x,y,z,value,scale,f");
  int rows = 0;
  while (std::getline(is, line)) {
    ++rows;
    std::vector<double> cols;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cols.push_back(std::stod(cell));
    REQUIRE(cols.size() == 6);
    CHECK(std::abs(cols[3]) <= 1e-6 * cols[4]);
  }
  CHECK(rows == 2);
}

TEST_CASE("module errors surface verbatim with exit 1") {
  const Result r = run("badkernel", "[run]\ncommand = landau-eval\n[kernel]\ndim = 2\ngamma = -2\n"
                                    "[field]\ntype = gaussian\n[points]\nv = 0,0\n");
  CHECK(r.status == 1);
  CHECK(r.err.find("two-dimensional Coulomb") != std::string::npos);
  const Result t = run("threads", kM0, "--threads 0");
  CHECK(t.status == 1);
}

TEST_CASE("parse_config validates before any work") {
  CHECK_THROWS_AS(parse_config("", "x"), ParseError);
  CHECK_THROWS_AS(parse_config("[run]\ncommand = fly\n", "x"), ConfigurationError);
  CHECK_THROWS_AS(parse_config("gamma = 1\n[run]\ncommand = hydro-verdict\n", "x"), ParseError);
  const RunConfig c = parse_config("[run]\ncommand = hydro-verdict\nseed = 12\n[hydro]\ngammas = -3, 0, 1\n", "x");
  CHECK(c.command == Command::HydroVerdict);
  CHECK(c.seed == 12);
  CHECK(c.gammas == std::vector<double>{-3.0, 0.0, 1.0});
}

TEST_CASE("shipped example runs succeed and keep a nonnegative Gronwall margin") {
  int runs = 0;
  for (const auto& entry : fs::directory_iterator(fs::path(KINETIC_DATA_DIR) / "runs")) {
    if (entry.path().extension() != ".ini") continue;
    ++runs;
    const std::string name = "shipped_" + entry.path().stem().string();
    const Result r = run(name, slurp(entry.path()));
    CAPTURE(name);
    REQUIRE(r.status == 0);
    const fs::path summary = r.out / "summary.json";
    if (!fs::exists(summary)) continue;
    const nlohmann::json s = read_json(summary);
    if (!s.contains("gronwall")) continue;
    CHECK(s["gronwall"]["holds"] == true);
    CHECK(s["gronwall"]["min_margin"].get<double>() >= 0.0);
    CHECK(s["mass_drift"].get<double>() <= 1e-3);
    CHECK(s["energy_drift"].get<double>() <= 1e-3);
  }
  CHECK(runs == 7);
}
