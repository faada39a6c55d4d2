#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "kinetic/barrier.hpp"
#include "kinetic/cli.hpp"
#include "kinetic/errors.hpp"
#include "kinetic/hydro.hpp"
#include "kinetic/verify.hpp"

namespace kinetic {

const char* command_name(Command c) {
  switch (c) {
    case Command::LandauEval: return "landau-eval";
    case Command::BoltzmannEval: return "boltzmann-eval";
    case Command::BarrierCheck: return "barrier-check";
    case Command::DeltaSearch: return "delta-search";
    case Command::M0Search: return "m0-search";
    case Command::HomogRun: return "homog-run";
    case Command::HydroVerdict: return "hydro-verdict";
  }
  return "?";
}

namespace {

using Keys = std::set<std::string>;

const std::map<std::string, Keys>& section_keys() {
  static const std::map<std::string, Keys> k = {
      {"run", {"command", "seed", "output"}},
      {"kernel", {"operator", "dim", "gamma", "angular", "angular_param"}},
      {"quadrature",
       {"outer_radius", "polar_radius", "radial_nodes", "angular_nodes", "hyperplane_nodes", "regularization_radius",
        "rel_tol", "panel_width", "sup_radial_samples", "fd_step"}},
      {"field",
       {"type", "rho", "u", "theta", "center", "radius", "height", "m", "alpha", "v0", "width", "power",
        "decay_exponent"}},
      {"points", {"v"}},
      {"eval", {"form"}},
      {"search", {"m", "grid_n", "ceiling"}},
      {"barrier", {"m", "count", "r_min", "r_max"}},
      {"homog",
       {"n", "V", "t_end", "cfl", "m", "max_steps", "grid_file", "rho", "u", "theta", "gronwall_C", "sweep_count",
        "riccati_T"}},
      {"hydro", {"gammas", "catalog"}},
  };
  return k;
}

Keys sections_for(Command c) {
  switch (c) {
    case Command::LandauEval: return {"run", "kernel", "quadrature", "field", "points"};
    case Command::BoltzmannEval: return {"run", "kernel", "quadrature", "field", "points", "eval"};
    case Command::BarrierCheck: return {"run", "kernel", "quadrature", "barrier"};
    case Command::DeltaSearch:
    case Command::M0Search: return {"run", "kernel", "quadrature", "search"};
    case Command::HomogRun: return {"run", "kernel", "quadrature", "homog"};
    case Command::HydroVerdict: return {"run", "hydro"};
  }
  return {};
}

Command parse_command(const std::string& s, const std::string& where) {
  for (Command c : {Command::LandauEval, Command::BoltzmannEval, Command::BarrierCheck, Command::DeltaSearch,
                    Command::M0Search, Command::HomogRun, Command::HydroVerdict})
    if (s == command_name(c)) return c;
  throw ConfigurationError(where + ": unknown command '" + s + "'");
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Line of each section header and key, for error messages.
std::map<std::string, int> locate_lines(const std::string& text) {
  std::map<std::string, int> out;
  std::istringstream is(text);
  std::string line, section;
  for (int no = 1; std::getline(is, line); ++no) {
    const std::string t = trim(line);
    if (t.empty() || t[0] == ';' || t[0] == '#') continue;
    if (t.front() == '[' && t.back() == ']') {
      section = trim(t.substr(1, t.size() - 2));
      out.emplace("[" + section + "]", no);
      continue;
    }
    const auto eq = t.find('=');
    if (eq != std::string::npos) out.emplace(section + "." + trim(t.substr(0, eq)), no);
  }
  return out;
}

class Reader {
 public:
  Reader(const boost::property_tree::ptree& tree, std::string source, std::map<std::string, int> lines)
      : tree_(tree), source_(std::move(source)), lines_(std::move(lines)) {}

  std::string where(const std::string& section, const std::string& key = "") const {
    const auto it = lines_.find(key.empty() ? "[" + section + "]" : section + "." + key);
    std::string w = source_;
    if (it != lines_.end()) w += ":" + std::to_string(it->second);
    return w + ": [" + section + "]" + (key.empty() ? "" : " " + key);
  }

  bool is_section(const std::string& name) const { return lines_.count("[" + name + "]") > 0; }

  bool has(const std::string& section, const std::string& key) const {
    const auto s = tree_.get_child_optional(section);
    return s && s->count(key);
  }
  std::optional<std::string> str(const std::string& section, const std::string& key) const {
    if (!has(section, key)) return std::nullopt;
    return tree_.get_child(section).get<std::string>(key);
  }
  std::string required(const std::string& section, const std::string& key) const {
    auto v = str(section, key);
    if (!v) throw ConfigurationError(where(section) + ": missing required key '" + key + "'");
    return *v;
  }
  double number(const std::string& section, const std::string& key, std::optional<double> dflt = {}) const {
    const auto v = dflt ? str(section, key) : std::optional<std::string>(required(section, key));
    if (!v) return *dflt;
    try {
      return eval_expression(*v);
    } catch (const ParseError& e) {
      throw ConfigurationError(where(section, key) + ": " + e.what());
    }
  }
  template <class Int>
  Int integer(const std::string& section, const std::string& key, std::optional<Int> dflt = {}) const {
    const auto v = dflt ? str(section, key) : std::optional<std::string>(required(section, key));
    if (!v) return *dflt;
    Int x{};
    const auto r = std::from_chars(v->data(), v->data() + v->size(), x);
    if (r.ec != std::errc() || r.ptr != v->data() + v->size())
      throw ConfigurationError(where(section, key) + ": expected an integer, got '" + *v + "'");
    return x;
  }
  std::vector<double> list(const std::string& section, const std::string& key, char sep = ',') const {
    std::vector<double> out;
    std::istringstream is(required(section, key));
    std::string item;
    while (std::getline(is, item, sep)) {
      try {
        out.push_back(eval_expression(item));
      } catch (const ParseError& e) {
        throw ConfigurationError(where(section, key) + ": " + e.what());
      }
    }
    if (out.empty()) throw ConfigurationError(where(section, key) + ": empty list");
    return out;
  }
  Vec3 vec(const std::string& section, const std::string& key, int d, std::optional<Vec3> dflt = {},
           bool allow_scalar = false) const {
    if (dflt && !has(section, key)) return *dflt;
    return to_vec(list(section, key), d, where(section, key), allow_scalar);
  }
  static Vec3 to_vec(const std::vector<double>& x, int d, const std::string& w, bool allow_scalar) {
    if (allow_scalar && x.size() == 1) return Vec3{x[0], x[0], d == 3 ? x[0] : 0.0};
    if (static_cast<int>(x.size()) != d)
      throw ConfigurationError(w + ": expected " + std::to_string(d) + " components");
    return Vec3{x[0], x[1], d == 3 ? x[2] : 0.0};
  }

 private:
  const boost::property_tree::ptree& tree_;
  std::string source_;
  std::map<std::string, int> lines_;
};

KernelSpec read_kernel(const Reader& r, std::optional<Operator> implied) {
  const int d = r.integer<int>("kernel", "dim", 3);
  const double gamma = r.number("kernel", "gamma");
  Operator op;
  if (const auto s = r.str("kernel", "operator")) {
    if (*s == "landau")
      op = Operator::Landau;
    else if (*s == "boltzmann")
      op = Operator::Boltzmann;
    else
      throw ConfigurationError(r.where("kernel", "operator") + ": expected landau or boltzmann");
    if (implied && *implied != op)
      throw ConfigurationError(r.where("kernel", "operator") + ": this command needs the other operator");
  } else if (implied) {
    op = *implied;
  } else {
    throw ConfigurationError(r.where("kernel") + ": missing required key 'operator'");
  }
  if (op == Operator::Landau) {
    if (r.has("kernel", "angular") || r.has("kernel", "angular_param"))
      throw ConfigurationError(r.where("kernel") + ": Landau kernels take no angular cross-section");
    return KernelSpec::landau(d, gamma);
  }
  const std::string ang = r.str("kernel", "angular").value_or("constant");
  if (ang == "constant") return KernelSpec::boltzmann(d, gamma, b_constant(r.number("kernel", "angular_param", 1.0)));
  if (ang == "cos2_half") return KernelSpec::boltzmann(d, gamma, b_cos2_half());
  if (ang == "power") return KernelSpec::boltzmann(d, gamma, b_power(r.number("kernel", "angular_param")));
  if (ang == "noncutoff") {
    const double s = r.number("kernel", "angular_param");
    return KernelSpec::boltzmann(d, gamma, b_noncutoff(d, s), s);
  }
  throw ConfigurationError(r.where("kernel", "angular") + ": expected constant, cos2_half, power or noncutoff");
}

QuadratureScheme read_quadrature(const Reader& r) {
  QuadratureScheme q;
  const std::string s = "quadrature";
  q.outer_radius = r.number(s, "outer_radius", q.outer_radius);
  q.polar_radius = r.number(s, "polar_radius", q.polar_radius);
  q.radial_nodes = r.integer<int>(s, "radial_nodes", q.radial_nodes);
  q.angular_nodes = r.integer<int>(s, "angular_nodes", q.angular_nodes);
  q.hyperplane_nodes = r.integer<int>(s, "hyperplane_nodes", q.hyperplane_nodes);
  q.regularization_radius = r.number(s, "regularization_radius", q.regularization_radius);
  q.rel_tol = r.number(s, "rel_tol", q.rel_tol);
  q.panel_width = r.number(s, "panel_width", q.panel_width);
  q.sup_radial_samples = r.integer<int>(s, "sup_radial_samples", q.sup_radial_samples);
  q.fd_step = r.number(s, "fd_step", q.fd_step);
  try {
    q.validate();
  } catch (const Error& e) {
    throw ConfigurationError(r.where(s) + ": " + e.what());
  }
  return q;
}

VelocityField read_field(const Reader& r, int d) {
  const std::string s = "field";
  const std::string type = r.required(s, "type");
  const double decay = r.number(s, "decay_exponent", 16.0);
  if (type == "gaussian")
    return gaussian_field(d, r.number(s, "rho", 1.0), r.vec(s, "u", d, Vec3{}),
                          r.vec(s, "theta", d, Vec3{1.0, 1.0, 1.0}, true), decay);
  if (type == "compact_bump")
    return compact_bump(d, r.vec(s, "center", d, Vec3{}), r.number(s, "radius"), r.number(s, "height"), decay);
  if (type == "windowed_barrier") {
    const Barrier b = make_barrier(r.number(s, "m"), r.number(s, "alpha", 1.0), d);
    return windowed_barrier(b, r.vec(s, "v0", d), r.number(s, "width"), r.integer<int>(s, "power", 1));
  }
  throw ConfigurationError(r.where(s, "type") + ": expected gaussian, compact_bump or windowed_barrier");
}

std::vector<Vec3> read_points(const Reader& r, int d) {
  std::vector<Vec3> out;
  std::istringstream is(r.required("points", "v"));
  std::string item;
  while (std::getline(is, item, ';')) {
    if (trim(item).empty()) continue;
    std::vector<double> x;
    std::istringstream cs(item);
    std::string c;
    while (std::getline(cs, c, ',')) {
      try {
        x.push_back(eval_expression(c));
      } catch (const ParseError& e) {
        throw ConfigurationError(r.where("points", "v") + ": " + e.what());
      }
    }
    out.push_back(Reader::to_vec(x, d, r.where("points", "v"), false));
  }
  if (out.empty()) throw ConfigurationError(r.where("points", "v") + ": no points");
  return out;
}

}  // namespace

RunConfig parse_config(const std::string& text, const std::string& source) {
  boost::property_tree::ptree tree;
  {
    std::istringstream is(text);
    try {
      boost::property_tree::read_ini(is, tree);
    } catch (const boost::property_tree::ini_parser_error& e) {
      throw ParseError(source + ":" + std::to_string(e.line()) + ": " + e.message());
    }
  }
  if (tree.empty()) throw ParseError(source + ":1: empty configuration");
  const Reader r(tree, source, locate_lines(text));

  for (const auto& [name, node] : tree)
    if (!node.data().empty() || (node.empty() && !r.is_section(name)))
      throw ParseError(source + ": key '" + name + "' outside any section");
  if (!tree.count("run")) throw ConfigurationError(source + ": missing [run] section");

  RunConfig cfg;
  cfg.text = text;
  cfg.command = parse_command(r.required("run", "command"), r.where("run", "command"));
  const Keys allowed = sections_for(cfg.command);
  for (const auto& [name, node] : tree) {
    if (!allowed.count(name))
      throw ConfigurationError(r.where(name) + ": section not used by " + command_name(cfg.command));
    const Keys& keys = section_keys().at(name);
    for (const auto& kv : node)
      if (!keys.count(kv.first)) throw ConfigurationError(r.where(name, kv.first) + ": unknown key");
  }
  cfg.seed = r.integer<std::uint64_t>("run", "seed", 0);
  cfg.output = r.str("run", "output").value_or("out");

  if (cfg.command != Command::HydroVerdict) {
    std::optional<Operator> implied;
    if (cfg.command == Command::LandauEval || cfg.command == Command::HomogRun) implied = Operator::Landau;
    if (cfg.command == Command::BoltzmannEval || cfg.command == Command::M0Search) implied = Operator::Boltzmann;
    if (!tree.count("kernel")) throw ConfigurationError(source + ": missing [kernel] section");
    try {
      cfg.kernel = read_kernel(r, implied);
    } catch (const ConfigurationError&) {
      throw;
    } catch (const Error& e) {
      throw ConfigurationError(r.where("kernel") + ": " + e.what());
    }
    cfg.quadrature = read_quadrature(r);
  }
  const int d = cfg.kernel ? cfg.kernel->dim() : 3;

  switch (cfg.command) {
    case Command::LandauEval:
    case Command::BoltzmannEval:
      try {
        cfg.field = read_field(r, d);
      } catch (const ConfigurationError&) {
        throw;
      } catch (const Error& e) {
        throw ConfigurationError(r.where("field") + ": " + e.what());
      }
      cfg.points = read_points(r, d);
      cfg.form = r.str("eval", "form").value_or(cfg.kernel->op() == Operator::Boltzmann && !cfg.kernel->cutoff() ? "carleman" : "both");
      if (cfg.form != "sigma" && cfg.form != "carleman" && cfg.form != "both")
        throw ConfigurationError(r.where("eval", "form") + ": expected sigma, carleman or both");
      if (cfg.form != "carleman" && cfg.command == Command::BoltzmannEval && !cfg.kernel->cutoff())
        throw ConfigurationError(r.where("eval", "form") + ": the sigma form needs a cutoff kernel");
      break;
    case Command::BarrierCheck:
      cfg.m = r.number("barrier", "m");
      cfg.count = r.integer<int>("barrier", "count", 16);
      cfg.r_min = r.number("barrier", "r_min", 1.0);
      cfg.r_max = r.number("barrier", "r_max", 3.0);
      if (!(cfg.m > 0.0)) throw ConfigurationError(r.where("barrier", "m") + ": must be positive");
      if (cfg.count < 1) throw ConfigurationError(r.where("barrier", "count") + ": must be at least 1");
      if (!(cfg.r_min >= 0.5 && cfg.r_max >= cfg.r_min))
        throw ConfigurationError(r.where("barrier") + ": need 1/2 <= r_min <= r_max");
      break;
    case Command::DeltaSearch:
      cfg.m = r.number("search", "m");
      cfg.grid_n = r.integer<int>("search", "grid_n", 257);
      if (cfg.grid_n < 3) throw ConfigurationError(r.where("search", "grid_n") + ": must be at least 3");
      if (r.has("search", "ceiling")) throw ConfigurationError(r.where("search", "ceiling") + ": m0-search only");
      break;
    case Command::M0Search:
      cfg.ceiling = r.number("search", "ceiling", 200.0);
      if (r.has("search", "m") || r.has("search", "grid_n"))
        throw ConfigurationError(r.where("search") + ": m0-search takes only 'ceiling'");
      break;
    case Command::HomogRun: {
      HomogParams& h = cfg.homog;
      const std::string s = "homog";
      h.n = r.integer<int>(s, "n", h.n);
      h.V = r.number(s, "V", h.V);
      h.t_end = r.number(s, "t_end", h.t_end);
      h.cfl = r.number(s, "cfl", h.cfl);
      h.m = r.number(s, "m", h.m);
      h.max_steps = r.integer<int>(s, "max_steps", h.max_steps);
      h.grid_file = r.str(s, "grid_file").value_or("");
      if (!h.grid_file.empty() && (r.has(s, "rho") || r.has(s, "u") || r.has(s, "theta") || r.has(s, "n") ||
                                   r.has(s, "V")))
        throw ConfigurationError(r.where(s, "grid_file") + ": a grid file fixes n, V and the data");
      h.rho = r.number(s, "rho", h.rho);
      h.u = r.vec(s, "u", d, Vec3{});
      h.theta = r.vec(s, "theta", d, h.theta, true);
      if (const auto c = r.str(s, "gronwall_C")) {
        if (*c == "sweep")
          h.gronwall_from_sweep = true;
        else
          h.gronwall_C = r.number(s, "gronwall_C");
      }
      h.sweep_count = r.integer<int>(s, "sweep_count", h.sweep_count);
      h.riccati_T = r.number(s, "riccati_T", 0.0);
      if (h.n < 4 || h.n % 2) throw ConfigurationError(r.where(s, "n") + ": must be even and at least 4");
      if (!(h.V > 0.0)) throw ConfigurationError(r.where(s, "V") + ": must be positive");
      if (!(h.cfl > 0.0 && h.cfl < 1.0)) throw ConfigurationError(r.where(s, "cfl") + ": must lie in (0, 1)");
      if (!(h.t_end >= 0.0)) throw ConfigurationError(r.where(s, "t_end") + ": must be nonnegative");
      if (h.gronwall_C && !(*h.gronwall_C > 0.0))
        throw ConfigurationError(r.where(s, "gronwall_C") + ": must be positive or 'sweep'");
      if (h.sweep_count < 1) throw ConfigurationError(r.where(s, "sweep_count") + ": must be at least 1");
      break;
    }
    case Command::HydroVerdict:
      cfg.gammas = r.list("hydro", "gammas");
      for (double g : cfg.gammas)
        if (!(g >= -3.0 && g <= 1.0)) throw ConfigurationError(r.where("hydro", "gammas") + ": gamma outside [-3, 1]");
      cfg.catalog = r.str("hydro", "catalog").value_or("");
      break;
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigurationError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path);
}

}  // namespace kinetic
