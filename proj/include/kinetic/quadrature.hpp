#pragma once

#include <functional>
#include <vector>

#include "kinetic/vec.hpp"

namespace kinetic {

struct QuadratureScheme {
  double outer_radius = 8.0;            // V: velocity integrals cut at |w| <= V
  double polar_radius = 1.0;            // r0: singular panel around the evaluation point
  int radial_nodes = 12;                // Gauss nodes per radial panel
  int angular_nodes = 16;               // polar-angle nodes; azimuth uses twice as many
  int hyperplane_nodes = 16;            // Gauss nodes per radial panel on hyperplanes
  double regularization_radius = 0.1;  // h0: Taylor zone of the Carleman singular part
  double rel_tol = 1e-6;
  double panel_width = 1.0;             // width cap for regular radial panels
  int sup_radial_samples = 400;         // shells used by weighted_sup_norm
  double fd_step = 0.0;                 // finite-difference step; 0 = rel_tol^{1/3} <v>

  // Throws ConfigurationError on violated invariants.
  void validate() const;
};

struct Rule1D {
  std::vector<double> x, w;
};

// Gauss-Legendre on [0, 1].
const Rule1D& gauss_legendre_unit(int n);
// Gauss-Jacobi on [0, 1] for the weight t^beta (beta > -1).
const Rule1D& gauss_jacobi_unit(int n, double beta);

// Surface measure |S^{d-1}| and |S^{d-2}| (the latter is 2 for d = 2).
double sphere_area(int d);

// Product rule on S^{d-1}, weights summing to |S^{d-1}|. For d = 3 the polar
// angle is measured from `axis` (Gauss-Legendre in cos theta, uniform azimuth);
// for d = 2 the rule is uniform in angle. The node set is invariant under
// v -> -v, so odd integrands cancel exactly.
struct DirectionRule {
  std::vector<Vec3> dir;
  std::vector<double> w;
};
DirectionRule sphere_rule(int d, int angular_nodes, const Vec3& axis = {0, 0, 1});

struct WeightedNodes {
  std::vector<Vec3> x;
  std::vector<double> w;
  std::size_t size() const { return x.size(); }
};

// Nodes for the integral of G over the ball |w| <= V when G(w) behaves like
// |w - c|^p times a smooth function near c (p > -d). The caller evaluates the full
// G at the nodes; the singular factor is absorbed by a Gauss-Jacobi rule in the
// distance to c on the first radial panel. Outside r0 each ray uses composite
// Gauss-Legendre panels out to the truncation sphere.
WeightedNodes polar_ball_nodes(int d, const Vec3& c, double p, const QuadratureScheme& q);

// Radial panels for a ray of length R starting at the singular point: Jacobi
// (weight rho^beta) on [0, min(r_sing, R)] then Gauss-Legendre panels of width
// <= width. The returned weights already divide out rho^beta on the first panel,
// so sum w_i g(rho_i) approximates the integral of g over [0, R].
void radial_panels(double R, double r_sing, double beta, double width, int n, std::vector<double>& rho,
                   std::vector<double>& w);

// One-dimensional adaptive integration (GSL QAGS / QAGIU). Throws EvaluationError
// when the integrator reports failure.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b, double epsabs,
                          double epsrel, double* abserr = nullptr);
double integrate_to_infinity(const std::function<double(double)>& f, double a, double epsabs, double epsrel,
                             double* abserr = nullptr);

}  // namespace kinetic
