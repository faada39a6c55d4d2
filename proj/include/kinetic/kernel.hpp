#pragma once

#include <functional>
#include <optional>
#include <string>

namespace kinetic {

enum class Operator { Landau, Boltzmann };

// Angular cross-section b as a function of x = |sin(theta/2)| in (0, 1].
// dsigma is surface measure on S^{d-1}.
struct AngularKernel {
  std::string name;
  std::function<double(double)> b;
  // Exponent p with b(x) ~ x^{-p} as x -> 0 (0 for bounded b). Drives the
  // Jacobi weights used near grazing collisions.
  double grazing_exponent = 0.0;
};

AngularKernel b_constant(double c = 1.0);
// cos^2(theta/2) = 1 - x^2.
AngularKernel b_cos2_half();
// x^{-(d-1)-2s}: the canonical non-cutoff profile of order s.
AngularKernel b_noncutoff(int d, double s);
// x^{-p} for arbitrary p (used to probe integrability limits).
AngularKernel b_power(double p);

// Factor within which a kernel flagged non-cutoff must match x^{-(d-1)-2s} near 0.
inline constexpr double kNoncutoffProfileFactor = 4.0;

class KernelSpec {
 public:
  static KernelSpec landau(int d, double gamma);
  static KernelSpec boltzmann(int d, double gamma, AngularKernel b, std::optional<double> noncutoff_s = {});

  int dim() const { return d_; }
  double gamma() const { return gamma_; }
  Operator op() const { return op_; }
  const AngularKernel& angular() const { return b_; }
  std::optional<double> noncutoff_s() const { return s_; }
  bool cutoff() const { return !s_.has_value() && b_.grazing_exponent <= d_ - 1 - 1e-12; }

  double b(double x) const { return b_.b(x); }
  // b(theta) + b(pi - theta) restricted to theta <= pi/2, as a function of
  // x = sin(theta/2) in (0, 1/sqrt2]; zero beyond.
  double b_sym(double x) const;

  // Prefactor of the non-singular Carleman part.
  double c_b() const { return c_b_; }
  // |S^{d-2}| * integral over [0, pi] of sin^2(theta/2) b sin^{d-2} theta.
  double angular_moment() const { return moment_; }

 private:
  KernelSpec() = default;
  int d_ = 3;
  double gamma_ = 0.0;
  Operator op_ = Operator::Landau;
  AngularKernel b_;
  std::optional<double> s_;
  double c_b_ = 0.0;
  double moment_ = 0.0;
};

}  // namespace kinetic
