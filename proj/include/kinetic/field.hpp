#pragma once

// VelocityField: a nonnegative function on d-dimensional velocity space with
// declared decay metadata f(v) <= A <v>^{-m_f}.

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "kinetic/vec.hpp"

namespace kinetic {

struct DecayInfo {
  double exponent = 0.0;   // m_f
  double amplitude = 0.0;  // A
  std::optional<double> inner_void_radius;
};

class VelocityField {
 public:
  using EvalFn = std::function<double(const Vec3&)>;
  using GradFn = std::function<Vec3(const Vec3&)>;
  using HessFn = std::function<Mat3(const Vec3&)>;
  using BatchFn = std::function<void(std::span<const Vec3>, std::span<double>)>;

  VelocityField(int dim, EvalFn eval, DecayInfo decay);

  VelocityField& with_gradient(GradFn g);
  VelocityField& with_hessian(HessFn h);
  VelocityField& with_batch(BatchFn b);
  // Marks the field as not twice differentiable; finite differences are then refused.
  VelocityField& non_differentiable();

  int dim() const { return dim_; }
  const DecayInfo& decay() const { return decay_; }

  double operator()(const Vec3& v) const { return (*eval_)(v); }
  void eval_batch(std::span<const Vec3> v, std::span<double> out) const;

  bool has_gradient() const { return static_cast<bool>(grad_); }
  bool has_hessian() const { return static_cast<bool>(hess_); }
  bool differentiable() const { return differentiable_; }

  // Analytic derivative if supplied, otherwise central differences with step h
  // (h <= 0 selects the default step rel_tol^{1/3} <v>).
  Vec3 gradient(const Vec3& v, double h = 0.0, double rel_tol = 1e-6) const;
  Mat3 hessian(const Vec3& v, double h = 0.0, double rel_tol = 1e-6) const;

  // Sampled invariant check: nonnegativity, decay bound, empty inner void.
  // Throws ConfigurationError naming the first offending node.
  void validate(std::span<const Vec3> nodes) const;

 private:
  int dim_;
  std::shared_ptr<const EvalFn> eval_;
  DecayInfo decay_;
  GradFn grad_;
  HessFn hess_;
  BatchFn batch_;
  bool differentiable_ = true;
};

double default_fd_step(const Vec3& v, double rel_tol);

// Frequently used fields.
VelocityField zero_field(int d);

// rho / ((2 pi)^{d/2} prod sqrt(theta_i)) exp(-sum (v_i-u_i)^2 / (2 theta_i)).
// Isotropic when all temperatures agree. Exact derivatives and a SIMD batch path.
VelocityField gaussian_field(int d, double rho, const Vec3& u, const Vec3& theta,
                             double decay_exponent = 16.0);
VelocityField gaussian_field(int d, double rho, const Vec3& u, double theta,
                             double decay_exponent = 16.0);

// Smooth compactly supported bump h exp(1 - 1/(1 - |v-c|^2/R^2)), peak value h at c.
VelocityField compact_bump(int d, const Vec3& center, double radius, double height,
                           double decay_exponent = 16.0);

// Nonnegative combination sum_k c_k f_k.
VelocityField mixture(const std::vector<std::pair<double, VelocityField>>& terms);

// w -> alpha f(lambda w).
VelocityField scaled_field(const VelocityField& f, double alpha, double lambda);

// w -> f(w - shift).
VelocityField shifted_field(const VelocityField& f, const Vec3& shift);

// sup_v <v>^k exp(-|v-u|^2/(2 theta)) for isotropic Gaussians, solved exactly
// through the critical-point cubic along the u axis. Returns the maximizer distance t
// along u (signed) through *arg when non-null.
double gaussian_bracket_sup(double u_norm, double theta, double k, double* arg = nullptr);

}  // namespace kinetic
