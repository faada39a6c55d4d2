#include "kinetic/quadrature.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "kinetic/errors.hpp"

namespace kinetic {

void QuadratureScheme::validate() const {
  auto fail = [](const std::string& m) { throw ConfigurationError("quadrature scheme: " + m); };
  if (!(outer_radius > 1.0)) fail("outer_radius must exceed 1");
  if (!(polar_radius > 0.0 && polar_radius < outer_radius)) fail("polar_radius must lie in (0, outer_radius)");
  if (!(regularization_radius > 0.0 && regularization_radius < 0.5)) fail("regularization_radius must lie in (0, 1/2)");
  if (radial_nodes < 2 || angular_nodes < 2 || hyperplane_nodes < 2) fail("node counts must be at least 2");
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) fail("rel_tol must lie in (0, 1)");
  if (!(panel_width > 0.0)) fail("panel_width must be positive");
  if (sup_radial_samples < 2) fail("sup_radial_samples must be at least 2");
  if (fd_step < 0.0) fail("fd_step must be nonnegative");
}

namespace {

struct GslInit {
  GslInit() { gsl_set_error_handler_off(); }
};
const GslInit gsl_init_once;

std::mutex& rule_mutex() {
  static std::mutex m;
  return m;
}

Rule1D fixed_rule(const gsl_integration_fixed_type* type, int n, double beta) {
  gsl_integration_fixed_workspace* ws = gsl_integration_fixed_alloc(type, n, 0.0, 1.0, 0.0, beta);
  if (ws == nullptr) throw EvaluationError("GSL could not build a Gauss rule with n = " + std::to_string(n));
  Rule1D r;
  const double* x = gsl_integration_fixed_nodes(ws);
  const double* w = gsl_integration_fixed_weights(ws);
  r.x.assign(x, x + n);
  r.w.assign(w, w + n);
  gsl_integration_fixed_free(ws);
  return r;
}

}  // namespace

const Rule1D& gauss_legendre_unit(int n) {
  static std::map<int, std::unique_ptr<Rule1D>> cache;
  std::lock_guard lock(rule_mutex());
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<Rule1D>(fixed_rule(gsl_integration_fixed_legendre, n, 0.0));
  return *slot;
}

const Rule1D& gauss_jacobi_unit(int n, double beta) {
  if (!(beta > -1.0)) throw ArgumentError("Jacobi exponent must exceed -1");
  if (beta == 0.0) return gauss_legendre_unit(n);
  static std::map<std::pair<int, double>, std::unique_ptr<Rule1D>> cache;
  std::lock_guard lock(rule_mutex());
  auto& slot = cache[{n, beta}];
  if (!slot) slot = std::make_unique<Rule1D>(fixed_rule(gsl_integration_fixed_jacobi, n, beta));
  return *slot;
}

double sphere_area(int d) { return 2.0 * std::pow(std::numbers::pi, 0.5 * d) / std::tgamma(0.5 * d); }

DirectionRule sphere_rule(int d, int n, const Vec3& axis_in) {
  DirectionRule r;
  const double pi = std::numbers::pi;
  const double dphi = pi / n;
  const Vec3 axis = (1.0 / norm(axis_in)) * axis_in;
  if (d == 2) {
    const Vec3 perp = perpendicular_2d(axis);
    for (int k = 0; k < 2 * n; ++k) {
      const double phi = (k + 0.5) * dphi;
      r.dir.push_back(std::cos(phi) * axis + std::sin(phi) * perp);
      r.w.push_back(dphi);
    }
    return r;
  }
  Vec3 t1, t2;
  orthonormal_complement(axis, t1, t2);
  const Rule1D& gl = gauss_legendre_unit(n);
  for (int i = 0; i < n; ++i) {
    const double mu = 2.0 * gl.x[i] - 1.0;
    const double st = std::sqrt(std::max(0.0, 1.0 - mu * mu));
    for (int k = 0; k < 2 * n; ++k) {
      const double phi = (k + 0.5) * dphi;
      r.dir.push_back(mu * axis + (st * std::cos(phi)) * t1 + (st * std::sin(phi)) * t2);
      r.w.push_back(2.0 * gl.w[i] * dphi);
    }
  }
  return r;
}

void radial_panels(double R, double r_sing, double beta, double width, int n, std::vector<double>& rho,
                   std::vector<double>& w) {
  rho.clear();
  w.clear();
  if (!(R > 0.0)) return;
  const double L0 = std::min(r_sing, R);
  const Rule1D& jac = gauss_jacobi_unit(n, beta);
  const double scale = std::pow(L0, beta + 1.0);
  for (int i = 0; i < n; ++i) {
    const double r = L0 * jac.x[i];
    rho.push_back(r);
    w.push_back(scale * jac.w[i] / std::pow(r, beta));
  }
  if (R <= L0) return;
  const int panels = std::max(1, static_cast<int>(std::ceil((R - L0) / width - 1e-12)));
  const double h = (R - L0) / panels;
  const Rule1D& gl = gauss_legendre_unit(n);
  for (int p = 0; p < panels; ++p)
    for (int i = 0; i < n; ++i) {
      rho.push_back(L0 + h * (p + gl.x[i]));
      w.push_back(h * gl.w[i]);
    }
}

WeightedNodes polar_ball_nodes(int d, const Vec3& c, double p, const QuadratureScheme& q) {
  const double beta = d - 1 + p;
  if (!(beta > -1.0)) throw ArgumentError("singular exponent is not integrable in dimension " + std::to_string(d));
  const double V = q.outer_radius;
  const DirectionRule dirs = sphere_rule(d, q.angular_nodes, c.x == 0 && c.y == 0 && c.z == 0 ? Vec3{0, 0, 1} : -c);
  const Rule1D& gl = gauss_legendre_unit(q.radial_nodes);
  WeightedNodes out;
  std::vector<double> rho, w;
  const double c2 = norm2(c);
  for (std::size_t k = 0; k < dirs.dir.size(); ++k) {
    const Vec3& om = dirs.dir[k];
    const double b = dot(c, om);
    const double disc = b * b - c2 + V * V;
    if (disc <= 0.0) continue;
    const double hi = -b + std::sqrt(disc);
    const double lo = -b - std::sqrt(disc);
    if (hi <= 0.0) continue;
    if (lo < 0.0) {
      radial_panels(hi, q.polar_radius, beta, q.panel_width, q.radial_nodes, rho, w);
    } else {
      // Evaluation point outside the ball: no singular panel on this ray.
      rho.clear();
      w.clear();
      const int panels = std::max(1, static_cast<int>(std::ceil((hi - lo) / q.panel_width)));
      const double h = (hi - lo) / panels;
      for (int pn = 0; pn < panels; ++pn)
        for (int i = 0; i < q.radial_nodes; ++i) {
          rho.push_back(lo + h * (pn + gl.x[i]));
          w.push_back(h * gl.w[i]);
        }
    }
    for (std::size_t i = 0; i < rho.size(); ++i) {
      out.x.push_back(c + rho[i] * om);
      out.w.push_back(w[i] * std::pow(rho[i], d - 1) * dirs.w[k]);
    }
  }
  return out;
}

namespace {

double gsl_trampoline(double x, void* params) {
  return (*static_cast<const std::function<double(double)>*>(params))(x);
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b, double epsabs, double epsrel,
                          double* abserr) {
  gsl_integration_workspace* ws = gsl_integration_workspace_alloc(4000);
  gsl_function F{&gsl_trampoline, const_cast<std::function<double(double)>*>(&f)};
  double result = 0.0, err = 0.0;
  const int status = gsl_integration_qags(&F, a, b, epsabs, epsrel, 4000, ws, &result, &err);
  gsl_integration_workspace_free(ws);
  if (abserr != nullptr) *abserr = err;
  if (status != GSL_SUCCESS && status != GSL_EROUND)
    throw EvaluationError(std::string("adaptive quadrature failed: ") + gsl_strerror(status));
  return result;
}

double integrate_to_infinity(const std::function<double(double)>& f, double a, double epsabs, double epsrel,
                             double* abserr) {
  gsl_integration_workspace* ws = gsl_integration_workspace_alloc(4000);
  gsl_function F{&gsl_trampoline, const_cast<std::function<double(double)>*>(&f)};
  double result = 0.0, err = 0.0;
  const int status = gsl_integration_qagiu(&F, a, epsabs, epsrel, 4000, ws, &result, &err);
  gsl_integration_workspace_free(ws);
  if (abserr != nullptr) *abserr = err;
  if (status != GSL_SUCCESS && status != GSL_EROUND)
    throw EvaluationError(std::string("adaptive quadrature failed: ") + gsl_strerror(status));
  return result;
}

}  // namespace kinetic
