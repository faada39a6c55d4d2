#include "kinetic/reduced_integrals.hpp"

#include <cmath>

#include "kinetic/errors.hpp"
#include "kinetic/quadrature.hpp"

namespace kinetic::detail {

double b2_condition_integral(const KernelSpec& k, double rel_tol) {
  const int d = k.dim();
  const double g = k.gamma();
  auto integrand = [&](double t) {
    const double x = t / std::sqrt(1.0 + t * t);
    return std::pow(1.0 + t * t, 0.5 * (g + 2 - d)) * k.b_sym(x) * std::pow(t, d);
  };

  // Local power law at the grazing end decides convergence before any
  // adaptive refinement is attempted.
  const double t1 = 1e-7, t2 = 1e-8;
  const double g1 = integrand(t1), g2 = integrand(t2);
  if (!std::isfinite(g1) || !std::isfinite(g2))
    throw KernelRejectionError("B2 integrand overflows near grazing collisions");
  if (g1 > 0.0 && g2 > 0.0) {
    const double expo = std::log(g1 / g2) / std::log(t1 / t2);
    if (expo <= -1.0 + 1e-6)
      throw KernelRejectionError("B2 condition integral diverges: integrand ~ t^" + std::to_string(expo) +
                                 " at grazing angles");
  }
  double value = 0.0;
  try {
    value = integrate_adaptive(integrand, 0.0, 1.0, 0.0, rel_tol);
  } catch (const EvaluationError& e) {
    throw KernelRejectionError(std::string("B2 condition integral did not converge: ") + e.what());
  }
  const double total = std::pow(2.0, d - 1) * sphere_area(d - 1) * value;
  if (!std::isfinite(total) || total > 1e300) throw KernelRejectionError("B2 condition integral exceeds overflow guard");
  return total;
}

}  // namespace kinetic::detail
