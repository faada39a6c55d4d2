#pragma once

#include "kinetic/field.hpp"
#include "kinetic/kernel.hpp"
#include "kinetic/quadrature.hpp"

namespace kinetic {

struct CollisionGeometry {
  Vec3 v, v_star, v_prime, v_star_prime, sigma;
  double r = 0.0;      // |v - v_*|
  double theta = 0.0;  // deviation angle; NaN when v = v_*
  bool theta_defined = true;
};

// v' = (v+v_*)/2 + r/2 sigma, v'_* = (v+v_*)/2 - r/2 sigma. When v = v_* the
// deviation angle is flagged undefined; require_theta turns that into a DomainError.
CollisionGeometry post_collision_map(const Vec3& v, const Vec3& v_star, const Vec3& sigma,
                                     bool require_theta = false);

struct BoltzmannEvaluation {
  double value = 0.0;
  // Collision-frequency scale: gain + loss (sigma form) or
  // int f |I| + |Q_ns| (Carleman form).
  double scale = 0.0;
  double part_a = 0.0;  // gain (sigma) or Q_s (Carleman)
  double part_b = 0.0;  // loss (sigma) or Q_ns (Carleman)
};

// Cutoff kernels only; non-cutoff specs raise CapabilityError.
BoltzmannEvaluation boltzmann_sigma_evaluate(const VelocityField& f, const Vec3& v, const KernelSpec& k,
                                             const QuadratureScheme& q);
double q_boltzmann_sigma(const VelocityField& f, const Vec3& v, const KernelSpec& k, const QuadratureScheme& q);

// Q_s + Q_ns with the symmetrized angular kernel on the Carleman side.
BoltzmannEvaluation boltzmann_carleman_evaluate(const VelocityField& f, const Vec3& v, const KernelSpec& k,
                                                const QuadratureScheme& q);
double q_boltzmann_carleman(const VelocityField& f, const Vec3& v, const KernelSpec& k,
                            const QuadratureScheme& q);

// Second moment of the B2 kernel over the hyperplane at unit distance, reduced to
// one radial variable. Raises KernelRejectionError when it diverges.
double kernel_integrability_check(const KernelSpec& k, const QuadratureScheme& q);
double kernel_integrability_check(int d, double gamma, const AngularKernel& b, const QuadratureScheme& q);

}  // namespace kinetic
