#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "kinetic/cli.hpp"
#include "kinetic/parallel.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Numerical verification tools for Landau and Boltzmann collision operators"};
  std::string config;
  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;
  int threads = 1;
  app.add_option("--config", config, "INI configuration file")->required();
  app.add_option("--out", out, "artifact directory (overrides [run] output)");
  app.add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "64-bit seed for randomized sweeps (overrides [run] seed)");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    kinetic::set_thread_count(threads);
    const kinetic::RunConfig cfg = kinetic::load_config(config);
    const int status = kinetic::run_command(cfg, kinetic::RunOptions{out, seed}, std::cerr);
    if (status == 2) std::cerr << "infeasible: see report.json\n";
    return status;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kinetic::exit_code_for(e);
  }
}
