#pragma once

#include <array>
#include <variant>

#include "kinetic/field.hpp"
#include "kinetic/vec.hpp"

namespace kinetic {

// b(v) = alpha b1(v) with b1(v) = |v|^{-m} for |v| >= 1/2. Inside the ball the
// profile is the degree-5 Taylor polynomial of s^{-m/2} in s = |v|^2 about
// s = 1/4. Writing x = 1 - 4s, that polynomial is 4^{m/2} times a partial sum of
// the positive series of (1-x)^{-m/2}, so it is positive, non-increasing and
// below |v|^{-m}, and it matches five s-derivatives at |v| = 1/2.
class Barrier {
 public:
  double m() const { return m_; }
  double alpha() const { return alpha_; }
  int dim() const { return dim_; }

  double value(const Vec3& v) const;
  Vec3 gradient(const Vec3& v) const;
  Mat3 hessian(const Vec3& v) const;

  // Unscaled radial profile b1 at radius r.
  double profile(double r) const;

  // Inner polynomial coefficients in powers of (s - 1/4).
  const std::array<double, 6>& coefficients() const { return c_; }

  VelocityField as_field() const;

 private:
  friend Barrier make_barrier(double m, double alpha, int dim);
  Barrier(double m, double alpha, int dim);

  // p(s), p'(s), p''(s) of the inner polynomial.
  void inner(double s, double& p, double& dp, double& d2p) const;

  double m_, alpha_;
  int dim_;
  std::array<double, 6> c_{};
};

// Throws ArgumentError for m <= 0 or alpha <= 0, and Error if the sampled
// monotonicity or dominance checks fail (they cannot for this profile).
Barrier make_barrier(double m, double alpha, int dim = 3);

enum class BarrierOrder { Value, Gradient, Hessian };
using BarrierValue = std::variant<double, Vec3, Mat3>;
BarrierValue barrier_eval(const Barrier& b, const Vec3& v, BarrierOrder order);

}  // namespace kinetic
