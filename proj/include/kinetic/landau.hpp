#pragma once

#include "kinetic/field.hpp"
#include "kinetic/kernel.hpp"
#include "kinetic/quadrature.hpp"

namespace kinetic {

struct LandauCoefficients {
  Mat3 a_bar;  // int |v-w|^{2+gamma} Pi(v-w) f(w) dw
  double c_bar = 0.0;
  Vec3 at_point;
  // Bound on the part of the integrals discarded beyond |w| = V, from the
  // declared decay A <w>^{-m_f}; infinite when the tail is not integrable.
  double truncation_estimate = 0.0;
};

LandauCoefficients landau_coefficients(const VelocityField& f, const Vec3& v, const KernelSpec& k,
                                       const QuadratureScheme& q);

struct LandauEvaluation {
  double value = 0.0;
  // sum |a_ij d_ij f| + |c f|: the natural size of the two competing terms.
  double scale = 0.0;
  LandauCoefficients coeffs;
  Mat3 hessian;
  double f_at_v = 0.0;
};

LandauEvaluation landau_evaluate(const VelocityField& f, const Vec3& v, const KernelSpec& k,
                                 const QuadratureScheme& q);

// a_bar : D^2 f(v) + c_bar f(v).
double q_landau(const VelocityField& f, const Vec3& v, const KernelSpec& k, const QuadratureScheme& q);

}  // namespace kinetic
