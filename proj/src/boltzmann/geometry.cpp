#include <algorithm>
#include <cmath>
#include <limits>

#include "kinetic/boltzmann.hpp"
#include "kinetic/errors.hpp"
#include "kinetic/reduced_integrals.hpp"

namespace kinetic {

CollisionGeometry post_collision_map(const Vec3& v, const Vec3& v_star, const Vec3& sigma, bool require_theta) {
  if (std::abs(norm(sigma) - 1.0) > 1e-12) throw ArgumentError("sigma must be a unit vector");
  CollisionGeometry g;
  g.v = v;
  g.v_star = v_star;
  g.sigma = sigma;
  const Vec3 u = v - v_star;
  g.r = norm(u);
  const Vec3 mid = 0.5 * (v + v_star);
  g.v_prime = mid + (0.5 * g.r) * sigma;
  g.v_star_prime = mid - (0.5 * g.r) * sigma;
  if (g.r == 0.0) {
    g.theta_defined = false;
    g.theta = std::numeric_limits<double>::quiet_NaN();
    if (require_theta) throw DomainError("deviation angle undefined for v = v_*");
  } else {
    g.theta = std::acos(std::clamp(dot(u, sigma) / g.r, -1.0, 1.0));
  }
  return g;
}

double kernel_integrability_check(const KernelSpec& k, const QuadratureScheme& q) {
  if (k.op() != Operator::Boltzmann) throw ArgumentError("kernel is not a Boltzmann kernel");
  return detail::b2_condition_integral(k, std::min(q.rel_tol, 1e-8));
}

double kernel_integrability_check(int d, double gamma, const AngularKernel& b, const QuadratureScheme& q) {
  // Construction performs the same check and raises on divergence.
  return kernel_integrability_check(KernelSpec::boltzmann(d, gamma, b), q);
}

}  // namespace kinetic
