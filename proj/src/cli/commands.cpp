#include <chrono>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>

#include "json.hpp"
#include "kinetic/boltzmann.hpp"
#include "kinetic/cli.hpp"
#include "kinetic/errors.hpp"
#include "kinetic/format.hpp"
#include "kinetic/hydro.hpp"
#include "kinetic/landau.hpp"
#include "kinetic/parallel.hpp"
#include "kinetic/solver.hpp"
#include "kinetic/verify.hpp"

namespace kinetic {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

// Non-finite numbers become null so the output stays valid JSON.
json num(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

std::string csv(double x) { return format_double(x); }

class Artifacts {
 public:
  explicit Artifacts(fs::path dir) : dir_(std::move(dir)) { fs::create_directories(dir_); }

  std::ofstream open(const std::string& name) {
    std::ofstream os(dir_ / name, std::ios::binary);
    if (!os) throw ConfigurationError("cannot write " + (dir_ / name).string());
    names_.push_back(name);
    return os;
  }
  void write(const std::string& name, const std::string& text) {
    std::ofstream os = open(name);
    os << text;
  }
  std::string path(const std::string& name) {
    names_.push_back(name);
    return (dir_ / name).string();
  }
  const std::vector<std::string>& names() const { return names_; }
  const fs::path& dir() const { return dir_; }

 private:
  fs::path dir_;
  std::vector<std::string> names_;
};

int landau_eval(const RunConfig& c, Artifacts& out) {
  std::ofstream os = out.open("values.csv");
  os << "x,y,z,value,scale,f\n";
  for (const Vec3& v : c.points) {
    const LandauEvaluation e = landau_evaluate(*c.field, v, *c.kernel, c.quadrature);
    os << csv(v.x) << ',' << csv(v.y) << ',' << csv(v.z) << ',' << csv(e.value) << ',' << csv(e.scale) << ','
       << csv(e.f_at_v) << '\n';
  }
  return 0;
}

int boltzmann_eval(const RunConfig& c, Artifacts& out) {
  std::ofstream os = out.open("values.csv");
  os << "x,y,z,sigma,carleman,scale\n";
  for (const Vec3& v : c.points) {
    std::string sig, car;
    double scale = 0.0;
    if (c.form != "carleman") {
      const BoltzmannEvaluation e = boltzmann_sigma_evaluate(*c.field, v, *c.kernel, c.quadrature);
      sig = csv(e.value);
      scale = e.scale;
    }
    if (c.form != "sigma") {
      const BoltzmannEvaluation e = boltzmann_carleman_evaluate(*c.field, v, *c.kernel, c.quadrature);
      car = csv(e.value);
      if (c.form == "carleman") scale = e.scale;
    }
    os << csv(v.x) << ',' << csv(v.y) << ',' << csv(v.z) << ',' << sig << ',' << car << ',' << csv(scale) << '\n';
  }
  return 0;
}

json sweep_json(const ContactSweep& s, double m) {
  json j;
  j["measured_C"] = num(s.measured_C);
  j["m"] = m;
  j["seed"] = s.seed;
  j["count"] = s.samples.size();
  return j;
}

int barrier_check(const RunConfig& c, Artifacts& out) {
  const ContactSweep s = contact_sweep(*c.kernel, c.quadrature, c.m, c.seed, c.count, c.r_min, c.r_max);
  {
    std::ofstream os = out.open("contact_sweep.csv");
    os << "sample,v0x,v0y,v0z,alpha,width,power,lhs,bound_unit,ratio\n";
    for (std::size_t i = 0; i < s.samples.size(); ++i) {
      const ContactSample& x = s.samples[i];
      os << i << ',' << csv(x.v0.x) << ',' << csv(x.v0.y) << ',' << csv(x.v0.z) << ',' << csv(x.alpha) << ','
         << csv(x.width) << ',' << x.power << ',' << csv(x.estimate.lhs) << ',' << csv(x.estimate.bound_unit) << ','
         << csv(x.estimate.ratio) << '\n';
    }
  }
  out.write("summary.json", sweep_json(s, c.m).dump(2) + "\n");
  return 0;
}

int infeasible_report(const std::string& parameter, const Error& e, Artifacts& out) {
  json j;
  j["parameter"] = parameter;
  j["value"] = nullptr;
  j["infeasible"] = e.what();
  out.write("report.json", j.dump(2) + "\n");
  return 2;
}

int delta_search(const RunConfig& c, Artifacts& out) {
  const KernelSpec& k = *c.kernel;
  ThresholdReport r;
  try {
    r = k.op() == Operator::Landau ? landau_delta_search(c.m, k.dim(), k.gamma(), c.quadrature.rel_tol, c.grid_n)
                                   : boltzmann_delta_search(c.m, k, c.quadrature);
  } catch (const InfeasibilityError& e) {
    return infeasible_report("delta", e, out);
  }
  out.write("report.json", to_json(r) + "\n");
  return r.certified() ? 0 : 2;
}

int m0_search(const RunConfig& c, Artifacts& out) {
  const ThresholdReport r = boltzmann_m0_search(*c.kernel, c.quadrature, c.ceiling);
  out.write("report.json", to_json(r) + "\n");
  return r.certified() ? 0 : 2;
}

int homog(const RunConfig& c, Artifacts& out, std::ostream& log) {
  const HomogParams& h = c.homog;
  const KernelSpec& k = *c.kernel;
  GridField f0 = h.grid_file.empty()
                     ? GridField::sample(gaussian_field(k.dim(), h.rho, h.u, h.theta), h.n, h.V)
                     : read_grid(h.grid_file);

  json summary;
  std::optional<double> C = h.gronwall_C;
  if (h.gronwall_from_sweep) {
    log << "measuring the contact constant over " << h.sweep_count << " configurations\n";
    const ContactSweep s = contact_sweep(k, c.quadrature, h.m, c.seed, h.sweep_count);
    C = s.measured_C;
    summary["contact_sweep"] = sweep_json(s, h.m);
    if (!(s.measured_C > 0.0))
      throw EvaluationError("contact sweep produced a nonpositive constant " + format_double(s.measured_C));
  }

  HomogOptions opt;
  opt.m = h.m;
  opt.max_steps = h.max_steps;
  const RunLog run = homog_run(f0, k, c.quadrature, h.t_end, h.cfl, opt);
  {
    std::ofstream os = out.open("run.csv");
    write_run_csv(run, os);
  }
  if (run.final_state) write_grid(*run.final_state, out.path("final.grid"));

  const RunRecord& a = run.records.front();
  const RunRecord& b = run.records.back();
  auto rel = [](double x, double x0) { return x0 != 0.0 ? std::abs(x / x0 - 1.0) : std::abs(x); };
  summary["steps"] = run.records.size() - 1;
  summary["t_final"] = b.t;
  summary["aborted"] = run.aborted;
  summary["abort_reason"] = run.abort_reason;
  summary["mass_drift"] = num(rel(b.mass, a.mass));
  summary["energy_drift"] = num(rel(b.energy, a.energy));
  summary["momentum_drift"] = num(a.mass > 0.0 ? norm(b.momentum - a.momentum) / a.mass : 0.0);

  if (C) {
    const GronwallResult g = gronwall_check(run, *C, h.m);
    double worst = std::numeric_limits<double>::infinity();
    std::ofstream os = out.open("gronwall.csv");
    os << "t,norm_m,margin\n";
    for (std::size_t i = 0; i < run.records.size(); ++i) {
      worst = std::min(worst, g.margin[i]);
      os << csv(run.records[i].t) << ',' << csv(run.records[i].norm_m) << ',' << csv(g.margin[i]) << '\n';
    }
    summary["gronwall"] = {{"C", *C}, {"holds", g.holds}, {"min_margin", num(worst)}};
    const RiccatiResult rc = riccati_check(run, *C, h.riccati_T);
    summary["riccati"] = {{"T", h.riccati_T},
                          {"pairwise_holds", rc.pairwise_holds},
                          {"rate_holds", rc.rate_holds},
                          {"envelope_blew_up", rc.envelope_blew_up},
                          {"worst_pairwise", num(rc.worst_pairwise)},
                          {"worst_rate", num(rc.worst_rate)}};
  }
  out.write("summary.json", summary.dump(2) + "\n");
  if (run.aborted) throw RunAbortedError(run.abort_reason);
  return 0;
}

int hydro(const RunConfig& c, Artifacts& out) {
  const std::vector<ImplosionScenario> cat = c.catalog.empty() ? shipped_catalog() : load_catalog(c.catalog);
  std::ofstream os = out.open("verdicts.csv");
  write_verdict_csv(cat, c.gammas, os);
  return 0;
}

}  // namespace

int run_command(const RunConfig& cfg, const RunOptions& opt, std::ostream& log) {
  RunConfig c = cfg;
  if (opt.seed) c.seed = *opt.seed;
  Artifacts out(opt.out_dir.value_or(c.output));
  out.write("config.ini", c.text);

  const auto t0 = std::chrono::steady_clock::now();
  int status = 1;
  std::string error;
  std::exception_ptr failure;
  try {
    switch (c.command) {
      case Command::LandauEval: status = landau_eval(c, out); break;
      case Command::BoltzmannEval: status = boltzmann_eval(c, out); break;
      case Command::BarrierCheck: status = barrier_check(c, out); break;
      case Command::DeltaSearch: status = delta_search(c, out); break;
      case Command::M0Search: status = m0_search(c, out); break;
      case Command::HomogRun: status = homog(c, out, log); break;
      case Command::HydroVerdict: status = hydro(c, out); break;
    }
  } catch (const std::exception& e) {
    status = exit_code_for(e);
    error = e.what();
    failure = std::current_exception();
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  json m;
  m["command"] = command_name(c.command);
  m["version"] = KINETIC_VERSION;
  m["seed"] = c.seed;
  m["threads"] = thread_count();
  m["wall_time_seconds"] = wall;
  m["exit_status"] = status;
  if (!error.empty()) m["error"] = error;
  m["config"] = "config.ini";
  std::vector<std::string> names = out.names();
  m["artifacts"] = names;
  {
    std::ofstream os(out.dir() / "manifest.json", std::ios::binary);
    os << m.dump(2) << '\n';
  }
  if (failure) std::rethrow_exception(failure);
  return status;
}

int exit_code_for(const std::exception& e) {
  if (const auto* k = dynamic_cast<const Error*>(&e); k && k->kind() == ErrorKind::Infeasibility) return 2;
  return 1;
}

}  // namespace kinetic
