#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

#include "kinetic/errors.hpp"
#include "kinetic/format.hpp"
#include "kinetic/simd.hpp"
#include "kinetic/solver.hpp"

namespace kinetic {
namespace {

struct LandauRhs {
  LandauSpectral engine;
  std::vector<std::vector<double>> a, d2;
  std::vector<double> cbar;

  LandauRhs(const GridField& g, const KernelSpec& k) : engine(g.dim, g.n, g.V, k) {}

  // Refreshes the coefficients for f and returns a_bar : D^2 f + c_bar f.
  void rhs(const std::vector<double>& f, std::vector<double>& out) {
    engine.coefficients(f, a, cbar);
    engine.hessian(f, d2);
    const int nc = engine.components();
    std::vector<const double*> lhs, rhs;
    std::vector<double> coef;
    for (int c = 0; c < nc; ++c) {
      const auto [i, j] = engine.component(c);
      lhs.push_back(a[c].data());
      rhs.push_back(d2[c].data());
      coef.push_back(i == j ? 1.0 : 2.0);
    }
    lhs.push_back(cbar.data());
    rhs.push_back(f.data());
    coef.push_back(1.0);
    out.resize(f.size());
    simd::kernels().contract(lhs.data(), rhs.data(), coef.data(), nc + 1, f.size(), out.data());
  }

  double max_frobenius() const {
    double best = 0.0;
    for (std::size_t p = 0; p < cbar.size(); ++p) {
      double s = 0.0;
      for (int c = 0; c < engine.components(); ++c) {
        const auto [i, j] = engine.component(c);
        s += (i == j ? 1.0 : 2.0) * a[c][p] * a[c][p];
      }
      best = std::max(best, std::sqrt(s));
    }
    return best;
  }
};

// Node weights <v>^m, <v>^{d+gamma} and 1 for the logged maxima.
struct NormWeights {
  std::vector<double> m, dpg, one;

  NormWeights(const GridField& g, double m_, double dpg_) : m(g.size()), dpg(g.size()), one(g.size(), 1.0) {
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double br = bracket(g.node(i));
      m[i] = std::pow(br, m_);
      dpg[i] = std::pow(br, dpg_);
    }
  }
};

RunRecord make_record(const GridField& g, const NormWeights& w) {
  RunRecord r;
  r.t = g.t;
  const Moments mo = grid_moments(g);
  r.mass = mo.mass;
  r.momentum = mo.momentum;
  r.energy = mo.energy;
  const simd::KernelTable& K = simd::kernels();
  const double* f = g.values.data();
  r.norm_m = std::max(0.0, K.weighted_max(w.m.data(), f, g.size()).value);
  r.norm_dpg = std::max(0.0, K.weighted_max(w.dpg.data(), f, g.size()).value);
  r.max_value = std::max(0.0, K.weighted_max(w.one.data(), f, g.size()).value);
  return r;
}

double ring_max(const GridField& g) {
  double mx = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    std::size_t idx = i;
    bool ring = false;
    for (int a = 0; a < g.dim; ++a) {
      const std::size_t c = idx % g.n;
      ring = ring || c == 0 || c + 1 == static_cast<std::size_t>(g.n);
      idx /= g.n;
    }
    if (ring) mx = std::max(mx, g.values[i]);
  }
  return mx;
}

}  // namespace

RunLog homog_run(const GridField& f0, const KernelSpec& k, const QuadratureScheme& q, double t_end, double cfl,
                 const HomogOptions& opt) {
  if (k.op() != Operator::Landau) throw CapabilityError("the homogeneous solver supports Landau kernels only");
  if (k.dim() != f0.dim) throw ArgumentError("kernel and grid dimensions differ");
  if (!(cfl > 0.0 && cfl < 1.0)) throw ArgumentError("cfl must lie in (0, 1)");
  if (!(t_end >= f0.t)) throw ArgumentError("t_end precedes the initial time");
  q.validate();
  f0.validate();

  RunLog log;
  log.dim = f0.dim;
  log.gamma = k.gamma();
  log.m = opt.m;
  GridField g = f0;
  const NormWeights weights(g, opt.m, f0.dim + k.gamma());
  const simd::KernelTable& K = simd::kernels();
  LandauRhs op(g, k);
  std::vector<double> r1, r2, half(g.size()), next(g.size());
  log.records.push_back(make_record(g, weights));

  auto abort = [&](std::string why) {
    log.aborted = true;
    log.abort_reason = std::move(why);
    log.final_state = g;
    return log;
  };

  int steps = 0;
  while (g.t < t_end) {
    if (++steps > opt.max_steps) return abort("step limit reached before t_end");
    op.rhs(g.values, r1);
    const double amax = op.max_frobenius();
    double cbar_max = 0.0;
    for (double c : op.cbar) cbar_max = std::max(cbar_max, c);
    if (steps == 1) log.records.front().cbar_max = cbar_max;
    const double remaining = t_end - g.t;
    double dt = amax > 0.0 ? cfl * g.h * g.h / (2.0 * g.dim * amax) : remaining;
    const bool last = dt >= remaining;
    if (last) dt = remaining;
    if (dt < opt.min_dt && !last) return abort("time step underflow at t = " + format_double(g.t));

    K.axpy_min(0.5 * dt, r1.data(), g.values.data(), half.data(), g.size());
    op.rhs(half, r2);
    const double mn = std::min(0.0, K.axpy_min(dt, r2.data(), g.values.data(), next.data(), g.size()));
    double mx = 0.0;
    for (double v : next) {
      mx = std::max(mx, v);
      if (!std::isfinite(v)) return abort("non-finite value after step at t = " + format_double(g.t));
    }
    double negmax = 0.0;
    if (mn < 0.0) {
      if (-mn > 1e-12 * mx) {
        std::ostringstream os;
        os.precision(17);
        os << "negativity " << -mn << " exceeds 1e-12 of the maximum " << mx << " at t = " << g.t + dt;
        return abort(os.str());
      }
      negmax = -mn;
      for (double& v : next) v = std::max(v, 0.0);
    }
    g.values.swap(next);
    g.t = last ? t_end : g.t + dt;
    if (ring_max(g) > 1e-8 * mx) return abort("mass reached the boundary of the velocity box at t = " + format_double(g.t));

    RunRecord rec = make_record(g, weights);
    rec.negmax = negmax;
    rec.cbar_max = cbar_max;
    rec.dt = dt;
    log.records.push_back(rec);
  }
  log.final_state = g;
  return log;
}

void write_run_csv(const RunLog& log, std::ostream& os) {
  os << "t,norm_m,norm_dpg,mass,px,py,pz,energy,negmax\n";
  for (const RunRecord& r : log.records) {
    os << format_double(r.t) << ',' << format_double(r.norm_m) << ',' << format_double(r.norm_dpg) << ','
       << format_double(r.mass) << ',' << format_double(r.momentum.x) << ',' << format_double(r.momentum.y) << ','
       << format_double(r.momentum.z) << ',' << format_double(r.energy) << ',' << format_double(r.negmax) << '\n';
  }
}

}  // namespace kinetic
