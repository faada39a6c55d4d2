#pragma once

// Configuration and dispatch for the `kinetic` command-line tool.
//
// Config files are INI: [section] headers and key = value lines, ';' or '#'
// comments. Every key is validated against the command before any work starts.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kinetic/field.hpp"
#include "kinetic/kernel.hpp"
#include "kinetic/quadrature.hpp"

namespace kinetic {

enum class Command { LandauEval, BoltzmannEval, BarrierCheck, DeltaSearch, M0Search, HomogRun, HydroVerdict };
const char* command_name(Command c);

struct HomogParams {
  int n = 32;
  double V = 6.55;
  double t_end = 1.0;
  double cfl = 0.3;
  double m = 4.0;
  int max_steps = 1000000;
  std::string grid_file;                // initial data from a binary grid instead of a Gaussian
  double rho = 1.0;
  Vec3 u;
  Vec3 theta{1.0, 1.0, 1.0};
  std::optional<double> gronwall_C;     // fixed constant
  bool gronwall_from_sweep = false;     // measure C with the contact sweep instead
  int sweep_count = 8;
  double riccati_T = 0.0;               // > last time enables the rate check
};

struct RunConfig {
  Command command = Command::LandauEval;
  std::string text;  // verbatim input, echoed into the artifact directory
  std::uint64_t seed = 0;
  std::string output = "out";
  std::optional<KernelSpec> kernel;
  QuadratureScheme quadrature;
  std::optional<VelocityField> field;
  std::vector<Vec3> points;
  std::string form = "both";  // boltzmann-eval: sigma, carleman or both
  // delta-search, m0-search, barrier-check
  double m = 0.0;
  int grid_n = 257;
  double ceiling = 200.0;
  int count = 16;
  double r_min = 1.0, r_max = 3.0;
  HomogParams homog;
  std::vector<double> gammas;
  std::string catalog;  // empty: shipped catalog
};

// Throws ParseError (with the line number) for malformed text and
// ConfigurationError for unknown or invalid keys.
RunConfig parse_config(const std::string& text, const std::string& source = "config");
RunConfig load_config(const std::string& path);

struct RunOptions {
  std::optional<std::string> out_dir;  // overrides [run] output
  std::optional<std::uint64_t> seed;   // overrides [run] seed
};

// Runs the command and writes its artifacts, manifest.json and config.ini.
// Returns 0 on success, 2 when the outcome is an infeasibility report.
// Errors propagate as exceptions.
int run_command(const RunConfig& cfg, const RunOptions& opt, std::ostream& log);

// Exit code for an exception escaping run_command: 2 for infeasibility, else 1.
int exit_code_for(const std::exception& e);

}  // namespace kinetic
