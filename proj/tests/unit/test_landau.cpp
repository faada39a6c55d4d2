#include <gsl/gsl_integration.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "kinetic/errors.hpp"
#include "kinetic/landau.hpp"
#include "kinetic/verify.hpp"

using namespace kinetic;
using std::numbers::pi;

namespace {

// a_bar(0) for the unit Maxwellian in d = 3:
// (2/3) |S^2| (2 pi)^{-3/2} int r^{4+gamma} e^{-r^2/2} dr = (2/3) sqrt(2/pi) 2^{(3+gamma)/2} Gamma((5+gamma)/2).
double maxwellian_lambda(double gamma) {
  return (2.0 / 3.0) * std::sqrt(2.0 / pi) * std::pow(2.0, 0.5 * (3.0 + gamma)) * std::tgamma(0.5 * (5.0 + gamma));
}

QuadratureScheme coarse() {
  QuadratureScheme q;
  q.outer_radius = 7.0;
  q.radial_nodes = 8;
  q.angular_nodes = 10;
  return q;
}

}  // namespace

TEST_CASE("zero field gives zero coefficients and value") {
  const QuadratureScheme q;
  for (double g : {-3.0, -1.0, 0.0, 1.0}) {
    const LandauEvaluation e = landau_evaluate(zero_field(3), Vec3{0.3, 0.1, -0.7}, KernelSpec::landau(3, g), q);
    CHECK(e.value == 0.0);
    CHECK(frobenius_norm(e.coeffs.a_bar) == 0.0);
    CHECK(e.coeffs.c_bar == 0.0);
  }
}

TEST_CASE("Coulomb c_bar is 8 pi f(v) in three dimensions") {
  const VelocityField f = gaussian_field(3, 1.0, Vec3{0.2, 0.0, -0.1}, 0.8);
  for (const Vec3& v : {Vec3{}, Vec3{0.5, 1.0, -0.3}, Vec3{2.0, 0.0, 0.0}}) {
    const LandauCoefficients c = landau_coefficients(f, v, KernelSpec::landau(3, -3.0), QuadratureScheme{});
    CHECK(c.c_bar == doctest::Approx(8.0 * pi * f(v)).epsilon(1e-15));
  }
}

TEST_CASE("Maxwellian a_bar at the origin is a multiple of the identity") {
  const VelocityField M = gaussian_field(3, 1.0, Vec3{}, 1.0);
  for (double g : {-3.0, -2.0, -1.0, 0.0, 1.0}) {
    CAPTURE(g);
    const Mat3 a = landau_coefficients(M, Vec3{}, KernelSpec::landau(3, g), QuadratureScheme{}).a_bar;
    const double lam = maxwellian_lambda(g);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) CHECK(a(i, j) == doctest::Approx(i == j ? lam : 0.0).epsilon(1e-6).scale(lam));
  }
}

TEST_CASE("a_bar converges under quadrature refinement") {
  const VelocityField f = gaussian_field(3, 1.0, Vec3{0.3, -0.2, 0.1}, Vec3{0.7, 1.2, 1.0});
  const Vec3 v{0.8, 0.4, -0.5};
  const KernelSpec k = KernelSpec::landau(3, -3.0);
  QuadratureScheme q1, q2;
  q2.radial_nodes = 2 * q1.radial_nodes;
  q2.angular_nodes = 2 * q1.angular_nodes;
  q2.outer_radius = 10.0;
  const Mat3 a1 = landau_coefficients(f, v, k, q1).a_bar, a2 = landau_coefficients(f, v, k, q2).a_bar;
  CHECK(frobenius_norm(a1 - a2) <= 1e-8 * frobenius_norm(a2));
}

TEST_CASE("Maxwellians are annihilated") {
  const VelocityField M = gaussian_field(3, 1.3, Vec3{0.4, -0.2, 0.1}, 0.9);
  const QuadratureScheme q;
  for (double g : {-3.0, -1.0, 0.0, 1.0})
    for (const Vec3& v : {Vec3{}, Vec3{1.0, -0.5, 0.2}, Vec3{-2.0, 1.0, 1.5}}) {
      CAPTURE(g);
      CAPTURE(to_string(v));
      const LandauEvaluation e = landau_evaluate(M, v, KernelSpec::landau(3, g), q);
      CHECK(std::abs(e.value) <= 1e-6 * e.scale);
    }
}

TEST_CASE("two-dimensional Maxwellians are annihilated for gamma != -2") {
  const VelocityField M = gaussian_field(2, 1.0, Vec3{0.3, -0.1, 0.0}, 1.1);
  for (double g : {-1.0, 0.0, 1.0}) {
    const LandauEvaluation e = landau_evaluate(M, Vec3{0.7, 0.5, 0.0}, KernelSpec::landau(2, g), QuadratureScheme{});
    CHECK(std::abs(e.value) <= 1e-6 * e.scale);
  }
  CHECK_THROWS_AS(KernelSpec::landau(2, -2.0), UnsupportedParameterError);
}

TEST_CASE("a_bar is positive semidefinite and the value is finite") {
  const VelocityField f = mixture({{0.6, gaussian_field(3, 1.0, Vec3{1.0, 0.0, 0.0}, 0.5)},
                                   {0.4, compact_bump(3, Vec3{-0.5, 0.5, 0.0}, 1.2, 0.3)}});
  SplitMix64 rng(5);
  for (int i = 0; i < 6; ++i) {
    const Vec3 v = rng.uniform(0.0, 2.5) * rng.unit_vector(3);
    const LandauEvaluation e = landau_evaluate(f, v, KernelSpec::landau(3, -3.0), coarse());
    const auto ev = symmetric_eigenvalues(e.coeffs.a_bar);
    CHECK(ev[0] >= -1e-10 * e.coeffs.a_bar.trace());
    CHECK(std::isfinite(e.value));
  }
}

TEST_CASE("scaling: Q(alpha f(lambda .))(v) = alpha^2 lambda^{-(d+gamma)} Q(f)(lambda v)") {
  const VelocityField f = gaussian_field(3, 1.0, Vec3{0.2, -0.1, 0.3}, Vec3{0.8, 1.0, 0.6});
  const Vec3 v{0.4, 0.3, -0.2};
  QuadratureScheme q;
  q.outer_radius = 16.0;
  for (double g : {-3.0, -1.0, 0.0}) {
    const KernelSpec k = KernelSpec::landau(3, g);
    for (double lambda : {0.5, 2.0}) {
      const double alpha = 1.7;
      const LandauEvaluation base = landau_evaluate(f, lambda * v, k, q);
      const LandauEvaluation s = landau_evaluate(scaled_field(f, alpha, lambda), v, k, q);
      const double factor = alpha * alpha * std::pow(lambda, -(3.0 + g));
      CAPTURE(g);
      CAPTURE(lambda);
      CHECK(std::abs(s.value - factor * base.value) <= 1e-6 * factor * base.scale);
    }
  }
}

TEST_CASE("translation covariance") {
  const VelocityField f = gaussian_field(3, 1.0, Vec3{}, Vec3{0.8, 1.0, 0.6});
  const Vec3 u{0.7, -0.4, 0.5}, v{0.3, 0.6, -0.1};
  for (double g : {-3.0, 0.0}) {
    const KernelSpec k = KernelSpec::landau(3, g);
    const LandauEvaluation a = landau_evaluate(f, v, k, QuadratureScheme{});
    const LandauEvaluation b = landau_evaluate(shifted_field(f, u), v + u, k, QuadratureScheme{});
    CHECK(std::abs(a.value - b.value) <= 1e-6 * a.scale);
  }
}

TEST_CASE("mass, momentum and energy are conserved") {
  // Tensor Gauss-Hermite in each axis.
  const Vec3 theta{0.7, 1.0, 1.3}, u{0.3, -0.2, 0.1};
  const VelocityField f = mixture({{1.0, gaussian_field(3, 1.0, u, theta)},
                                   {0.5, gaussian_field(3, 1.0, u + Vec3{0.6, 0.2, 0.0}, 0.5)}});
  const int n = 16;
  gsl_integration_fixed_workspace* w = gsl_integration_fixed_alloc(gsl_integration_fixed_hermite, n, 0.0, 1.0, 0.0, 0.0);
  const double* x = gsl_integration_fixed_nodes(w);
  const double* wt = gsl_integration_fixed_weights(w);
  const KernelSpec k = KernelSpec::landau(3, -1.0);
  const QuadratureScheme q;
  double m0 = 0.0, m1[3] = {0, 0, 0}, m2 = 0.0, scale = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l) {
        // Hermite weight exp(-t^2) with v_a = u_a + sqrt(theta_a) t_a, narrower than the
        // field so the tails of the narrow component are resolved too.
        const double s0 = std::sqrt(theta.x), s1 = std::sqrt(theta.y), s2 = std::sqrt(theta.z);
        const Vec3 v{u.x + s0 * x[i], u.y + s1 * x[j], u.z + s2 * x[l]};
        const double t2 = x[i] * x[i] + x[j] * x[j] + x[l] * x[l];
        const double weight = wt[i] * wt[j] * wt[l] * s0 * s1 * s2 * std::exp(t2);
        const LandauEvaluation e = landau_evaluate(f, v, k, q);
        m0 += weight * e.value;
        for (int a = 0; a < 3; ++a) m1[a] += weight * e.value * v[a];
        m2 += weight * e.value * norm2(v);
        scale += weight * e.scale * (1.0 + norm2(v));
      }
  gsl_integration_fixed_free(w);
  MESSAGE("moments of Q: " << m0 << " " << m1[0] << " " << m1[1] << " " << m1[2] << " " << m2 << " scale " << scale);
  CHECK(std::abs(m0) <= 1e-6 * scale);
  for (double c : m1) CHECK(std::abs(c) <= 1e-6 * scale);
  CHECK(std::abs(m2) <= 1e-6 * scale);
}

TEST_CASE("invalid inputs") {
  const VelocityField f = gaussian_field(3, 1.0, Vec3{}, 1.0);
  CHECK_THROWS_AS(landau_evaluate(f, Vec3{}, KernelSpec::boltzmann(3, 0.0, b_constant()), QuadratureScheme{}),
                  ArgumentError);
  CHECK_THROWS_AS(landau_evaluate(gaussian_field(2, 1.0, Vec3{}, 1.0), Vec3{}, KernelSpec::landau(3, -1.0),
                                  QuadratureScheme{}),
                  ArgumentError);
  QuadratureScheme bad;
  bad.radial_nodes = 0;
  CHECK_THROWS_AS(landau_evaluate(f, Vec3{}, KernelSpec::landau(3, -1.0), bad), ConfigurationError);
  const VelocityField rough = VelocityField(3, [](const Vec3& v) { return std::exp(-norm(v)); }, DecayInfo{})
                                  .non_differentiable();
  CHECK_THROWS_AS(landau_evaluate(rough, Vec3{0.5, 0.0, 0.0}, KernelSpec::landau(3, -1.0), QuadratureScheme{}),
                  CapabilityError);
}
