// The contact-point integrand of the Landau operator, with the contact point
// scaled to e and the integration variable w = v/|v0|.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "kinetic/errors.hpp"
#include "kinetic/verify.hpp"

namespace kinetic {

double landau_integrand(double m, int d, double gamma, double eps, double alpha) {
  // |e-w|^2 Pi(e-w)e.e = eps^2 sin^2(alpha) and |e-w|^2 = 1 - 2 eps cos(alpha) + eps^2.
  const double c = std::cos(alpha), s = std::sin(alpha);
  const double z2 = 1.0 - 2.0 * eps * c + eps * eps;
  return m * ((m + 2.0) * eps * eps * s * s - (d - 1) * z2) + (d - 1) * (d + gamma);
}

double landau_integrand_sup(double m, int d, double gamma, double delta, int grid_n) {
  if (grid_n < 2) throw ArgumentError("grid_n must be at least 2");
  if (!(delta >= 0.0 && delta < 1.0)) throw DomainError("delta must lie in [0, 1)");
  double best = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid_n; ++i) {
    const double eps = delta * i / (grid_n - 1);
    for (int j = 0; j < grid_n; ++j) {
      const double alpha = std::numbers::pi * j / (grid_n - 1);
      best = std::max(best, landau_integrand(m, d, gamma, eps, alpha));
    }
  }
  return best;
}

ThresholdReport landau_delta_search(double m, int d, double gamma, double rel_tol, int grid_n) {
  if (d != 2 && d != 3) throw ArgumentError("dimension must be 2 or 3");
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) throw ArgumentError("rel_tol must lie in (0, 1)");
  if (!(m > d + gamma))
    throw InfeasibilityError("no admissible window: the integrand is nonnegative at w = 0 when m <= d + gamma");

  auto sup = [&](double delta) { return landau_integrand_sup(m, d, gamma, delta, grid_n); };
  const double top = 1.0 - 1e-12;
  double lo = 0.0, hi = top;
  if (sup(top) > 0.0) {
    while (hi - lo > rel_tol * std::max(lo, 1e-300) && hi - lo > 1e-15) {
      const double mid = 0.5 * (lo + hi);
      (sup(mid) <= 0.0 ? lo : hi) = mid;
    }
  } else {
    lo = top;
  }

  ThresholdReport r;
  r.parameter = "delta";
  r.value = lo;
  r.certificate.push_back({"sup_G_at_delta", lo, sup(lo)});
  // Tightness witness just past the threshold, kept inside the unit ball.
  const double past = std::min(1.05 * lo, 0.5 * (1.0 + lo));
  if (past < 1.0) r.certificate.push_back({"sup_G_past_delta", past, sup(past)});
  r.grid = {{"m", m}, {"dim", double(d)}, {"gamma", gamma}, {"grid_n", double(grid_n)}, {"rel_tol", rel_tol}};
  return r;
}

}  // namespace kinetic
