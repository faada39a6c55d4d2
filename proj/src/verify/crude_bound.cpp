#include <cmath>
#include <sstream>

#include "kinetic/boltzmann.hpp"
#include "kinetic/errors.hpp"
#include "kinetic/landau.hpp"
#include "kinetic/norms.hpp"
#include "kinetic/verify.hpp"
#include "taper.hpp"

namespace kinetic {

VelocityField crude_bound_field(int d, double m, double delta) {
  if (d != 2 && d != 3) throw ArgumentError("dimension must be 2 or 3");
  if (!(m > 0.0)) throw ArgumentError("m must be positive");
  if (!(delta > 0.0 && delta <= 0.5)) throw ArgumentError("delta must lie in (0, 1/2]");
  // F(r) = r^{-m} S((r - delta)/delta) with its first two radial derivatives.
  auto F = [=](double r) {
    const detail::Step s = detail::smoothstep((r - delta) / delta);
    if (s.s == 0.0) return detail::Step{0.0, 0.0, 0.0};
    const double p = std::pow(r, -m);
    return detail::Step{p * s.s, p * (-m * s.s / r + s.ds / delta),
                        p * (m * (m + 1) * s.s / (r * r) - 2.0 * m * s.ds / (r * delta) + s.d2s / (delta * delta))};
  };
  DecayInfo decay{m, std::pow(std::sqrt(1.0 + delta * delta) / delta, m), delta};
  VelocityField f(d, [=](const Vec3& v) { return F(norm(v)).s; }, decay);
  f.with_gradient([=](const Vec3& v) { return detail::radial_gradient(v, F(norm(v)).ds); });
  f.with_hessian([=](const Vec3& v) {
    const detail::Step s = F(norm(v));
    return detail::radial_hessian(v, d, s.ds, s.d2s);
  });
  return f;
}

namespace {

void check_crude_hypotheses(const VelocityField& f, const Vec3& e, const QuadratureScheme& q) {
  if (std::abs(norm(e) - 1.0) > 1e-12) throw ArgumentError("contact point must be a unit vector");
  if (!f.decay().inner_void_radius || !(*f.decay().inner_void_radius > 0.0))
    throw ConfigurationError("crude bound needs a field with a declared inner void radius");
  if (std::abs(f(e) - 1.0) > 1e-12) throw ConfigurationError("crude bound needs f(e) = 1");
  const double m = f.decay().exponent;
  for (const Vec3& v : sup_norm_nodes(f.dim(), q)) {
    const double r = norm(v);
    if (r == 0.0) continue;
    const double fx = f(v);
    if (fx > std::pow(r, -m) * (1.0 + 1e-12)) {
      std::ostringstream os;
      os.precision(17);
      os << "field exceeds |v|^{-m} at v = " << to_string(v) << ": f = " << fx;
      throw ConfigurationError(os.str());
    }
  }
}

}  // namespace

double crude_bound_check(const VelocityField& f, const Vec3& e, const KernelSpec& k, const QuadratureScheme& q) {
  if (k.dim() != f.dim()) throw ArgumentError("kernel and field dimensions differ");
  check_crude_hypotheses(f, e, q);
  return k.op() == Operator::Landau ? q_landau(f, e, k, q) : q_boltzmann_carleman(f, e, k, q);
}

double crude_bound_envelope(const VelocityField& f, const Vec3& e, const KernelSpec& k, const QuadratureScheme& q) {
  if (k.op() != Operator::Landau) throw CapabilityError("the crude-bound envelope is implemented for Landau kernels");
  if (k.dim() != f.dim()) throw ArgumentError("kernel and field dimensions differ");
  check_crude_hypotheses(f, e, q);
  const double m = f.decay().exponent;
  const LandauCoefficients c = landau_coefficients(f, e, k, q);
  // trace(Pi) = d - 1, so trace(a_bar) / (d - 1) = int |e-w|^{2+gamma} f.
  return m * (m + 2.0) * c.a_bar.trace() / (k.dim() - 1) + c.c_bar * f(e);
}

}  // namespace kinetic
