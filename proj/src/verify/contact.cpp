#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "kinetic/boltzmann.hpp"
#include "kinetic/errors.hpp"
#include "kinetic/landau.hpp"
#include "kinetic/norms.hpp"
#include "kinetic/verify.hpp"
#include "taper.hpp"

namespace kinetic {

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double SplitMix64::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

Vec3 SplitMix64::unit_vector(int d) {
  const double phi = 2.0 * std::numbers::pi * uniform();
  if (d == 2) return {std::cos(phi), std::sin(phi), 0.0};
  const double z = 2.0 * uniform() - 1.0;
  const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
  return {s * std::cos(phi), s * std::sin(phi), z};
}

VelocityField windowed_barrier(const Barrier& b, const Vec3& v0, double width, int power) {
  if (!(width > 0.0)) throw ArgumentError("window width must be positive");
  if (power < 1) throw ArgumentError("window power must be at least 1");
  const double inv = 1.0 / (width * width);
  const int d = b.dim();
  const int p = power;
  // g = exp(-s^p) with s = |v - v0|^2 / (2 width^2).
  auto win = [=](const Vec3& v) { return std::exp(-std::pow(0.5 * norm2(v - v0) * inv, p)); };
  VelocityField f(d, [=](const Vec3& v) { return b.value(v) * win(v); }, b.as_field().decay());
  auto window_derivs = [=](const Vec3& v, double& g, Vec3& dg, Mat3& d2g) {
    const Vec3 ds = inv * (v - v0);
    const double s = 0.5 * norm2(v - v0) * inv;
    g = std::exp(-std::pow(s, p));
    const double sp1 = p == 1 ? 1.0 : std::pow(s, p - 1);
    const double sp2 = p == 1 ? 0.0 : (p == 2 ? 1.0 : std::pow(s, p - 2));
    dg = (-p * sp1 * g) * ds;
    d2g = Mat3::outer(ds, ds);
    d2g *= g * (p * p * sp1 * sp1 - p * (p - 1) * sp2);
    d2g -= (g * p * sp1 * inv) * Mat3::identity(d);
  };
  f.with_gradient([=](const Vec3& v) {
    double g;
    Vec3 dg;
    Mat3 d2g;
    window_derivs(v, g, dg, d2g);
    return g * b.gradient(v) + b.value(v) * dg;
  });
  f.with_hessian([=](const Vec3& v) {
    double g;
    Vec3 dg;
    Mat3 d2g;
    window_derivs(v, g, dg, d2g);
    const Vec3 db = b.gradient(v);
    Mat3 h = g * b.hessian(v);
    h += Mat3::outer(db, dg);
    h += Mat3::outer(dg, db);
    h += b.value(v) * d2g;
    return h;
  });
  return f;
}

VelocityField capped_barrier(const Barrier& b, double r1, double r2) {
  if (!(r1 > 0.0 && r2 > r1)) throw ArgumentError("capped_barrier needs 0 < r1 < r2");
  const int d = b.dim();
  const double w = r2 - r1;
  auto psi = [=](double r) {
    const detail::Step s = detail::smoothstep((r - r1) / w);
    return detail::Step{1.0 - s.s, -s.ds / w, -s.d2s / (w * w)};
  };
  VelocityField f(d, [=](const Vec3& v) { return b.value(v) * psi(norm(v)).s; }, b.as_field().decay());
  f.with_gradient([=](const Vec3& v) {
    const detail::Step p = psi(norm(v));
    return p.s * b.gradient(v) + b.value(v) * detail::radial_gradient(v, p.ds);
  });
  f.with_hessian([=](const Vec3& v) {
    const detail::Step p = psi(norm(v));
    const Vec3 dp = detail::radial_gradient(v, p.ds);
    const Vec3 db = b.gradient(v);
    Mat3 h = p.s * b.hessian(v);
    h += Mat3::outer(db, dp);
    h += Mat3::outer(dp, db);
    h += b.value(v) * detail::radial_hessian(v, d, p.ds, p.d2s);
    return h;
  });
  return f;
}

ContactConfiguration make_contact_configuration(const Barrier& b, const VelocityField& f, const Vec3& v0,
                                                const QuadratureScheme& q) {
  if (f.dim() != b.dim()) throw ConfigurationError("field and barrier dimensions differ");
  const double bv = b.value(v0), fv = f(v0);
  if (!(std::abs(fv - bv) <= 1e-12 * bv)) {
    std::ostringstream os;
    os.precision(17);
    os << "field does not touch the barrier at v0 = " << to_string(v0) << ": f = " << fv << ", b = " << bv;
    throw ConfigurationError(os.str());
  }
  std::vector<Vec3> nodes = sup_norm_nodes(f.dim(), q);
  const DirectionRule dirs = sphere_rule(f.dim(), 8);
  for (double rho : {1e-3, 1e-2, 0.1, 0.3})
    for (const Vec3& u : dirs.dir) nodes.push_back(v0 + rho * u);
  for (const Vec3& v : nodes) {
    const double fx = f(v), bx = b.value(v);
    if (!(fx >= 0.0) || fx > bx * (1.0 + 1e-12)) {
      std::ostringstream os;
      os.precision(17);
      os << "field is not between 0 and the barrier at v = " << to_string(v) << ": f = " << fx << ", b = " << bx;
      throw ConfigurationError(os.str());
    }
  }
  return ContactConfiguration{b, f, v0};
}

ContactEstimate contact_estimate_check(const ContactConfiguration& cfg, const KernelSpec& k,
                                       const QuadratureScheme& q) {
  if (k.dim() != cfg.field.dim()) throw ArgumentError("kernel and field dimensions differ");
  ContactEstimate out;
  out.lhs = k.op() == Operator::Landau ? q_landau(cfg.field, cfg.v0, k, q)
                                       : q_boltzmann_carleman(cfg.field, cfg.v0, k, q);
  const double bv = cfg.barrier.value(cfg.v0);
  out.bound_unit = bv * bv * std::pow(bracket(cfg.v0), k.dim() + k.gamma());
  out.ratio = out.lhs / out.bound_unit;
  return out;
}

ContactSweep contact_sweep(const KernelSpec& k, const QuadratureScheme& q, double m, std::uint64_t seed, int count,
                           double r_min, double r_max) {
  if (count < 1) throw ArgumentError("contact sweep needs at least one sample");
  if (!(r_min >= 0.5 && r_max >= r_min)) throw ArgumentError("contact sweep radii must satisfy 1/2 <= r_min <= r_max");
  SplitMix64 rng(seed);
  ContactSweep out;
  out.seed = seed;
  out.measured_C = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < count; ++i) {
    ContactSample s;
    s.alpha = rng.uniform(0.5, 2.0);
    s.width = rng.uniform(0.3, 1.5);
    const double r = rng.uniform(r_min, r_max);
    s.v0 = r * rng.unit_vector(k.dim());
    s.power = 1 + static_cast<int>(rng.next() % 3);
    const Barrier b = make_barrier(m, s.alpha, k.dim());
    const ContactConfiguration cfg{b, windowed_barrier(b, s.v0, s.width, s.power), s.v0};
    s.estimate = contact_estimate_check(cfg, k, q);
    out.measured_C = std::max(out.measured_C, s.estimate.ratio);
    out.samples.push_back(s);
  }
  return out;
}

}  // namespace kinetic
