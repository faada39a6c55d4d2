#pragma once

// C2 quintic smoothstep S(t) = 6t^5 - 15t^4 + 10t^3 on [0, 1], clamped outside,
// and helpers for radial multipliers built from it.

#include "kinetic/vec.hpp"

namespace kinetic::detail {

struct Step {
  double s, ds, d2s;
};

inline Step smoothstep(double t) {
  if (t <= 0.0) return {0.0, 0.0, 0.0};
  if (t >= 1.0) return {1.0, 0.0, 0.0};
  const double t2 = t * t;
  return {t2 * t * (10.0 + t * (-15.0 + 6.0 * t)), 30.0 * t2 * (1.0 - t) * (1.0 - t), 60.0 * t * (1.0 - t) * (1.0 - 2.0 * t)};
}

// Gradient and Hessian of the radial function F(|v|) from F' and F''.
inline Vec3 radial_gradient(const Vec3& v, double dF) {
  const double r = norm(v);
  return r > 0.0 ? (dF / r) * v : Vec3{};
}

inline Mat3 radial_hessian(const Vec3& v, int d, double dF, double d2F) {
  const double r = norm(v);
  if (r == 0.0) {
    Mat3 h = Mat3::identity(d);
    h *= d2F;
    return h;
  }
  const Vec3 u = (1.0 / r) * v;
  Mat3 uu = Mat3::outer(u, u);
  Mat3 h = Mat3::identity(d);
  h -= uu;
  h *= dF / r;
  uu *= d2F;
  h += uu;
  return h;
}

}  // namespace kinetic::detail
