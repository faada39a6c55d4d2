#include "kinetic/kernel.hpp"

#include <cmath>
#include <numbers>

#include "kinetic/errors.hpp"
#include "kinetic/quadrature.hpp"
#include "kinetic/reduced_integrals.hpp"

namespace kinetic {

AngularKernel b_constant(double c) {
  return {"constant", [c](double) { return c; }, 0.0};
}

AngularKernel b_cos2_half() {
  return {"cos2-half", [](double x) { return 1.0 - x * x; }, 0.0};
}

AngularKernel b_noncutoff(int d, double s) {
  const double p = (d - 1) + 2.0 * s;
  return {"noncutoff", [p](double x) { return std::pow(x, -p); }, p};
}

AngularKernel b_power(double p) {
  return {"power", [p](double x) { return std::pow(x, -p); }, p};
}

double KernelSpec::b_sym(double x) const {
  constexpr double kEdge = 0.70710678118654757;  // sin(pi/4), rounded up
  if (x > kEdge) return 0.0;
  return b_.b(x) + b_.b(std::sqrt(std::max(0.0, 1.0 - x * x)));
}

KernelSpec KernelSpec::landau(int d, double gamma) {
  if (d != 2 && d != 3) throw ArgumentError("dimension must be 2 or 3");
  if (d == 2 && gamma == -2.0)
    throw UnsupportedParameterError("the two-dimensional Coulomb case gamma = -2 is not supported");
  if (!(gamma >= -d && gamma <= 1.0)) throw ArgumentError("Landau gamma must lie in [-d, 1]");
  KernelSpec k;
  k.d_ = d;
  k.gamma_ = gamma;
  k.op_ = Operator::Landau;
  return k;
}

KernelSpec KernelSpec::boltzmann(int d, double gamma, AngularKernel b, std::optional<double> s) {
  if (d != 2 && d != 3) throw ArgumentError("dimension must be 2 or 3");
  if (!(gamma > -d)) throw ArgumentError("Boltzmann gamma must exceed -d");
  if (!b.b) throw ArgumentError("angular kernel has no evaluator");
  if (s && !(*s > 0.0 && *s < 1.0)) throw KernelRejectionError("non-cutoff order s must lie in (0, 1)");
  KernelSpec k;
  k.d_ = d;
  k.gamma_ = gamma;
  k.op_ = Operator::Boltzmann;
  k.b_ = std::move(b);
  k.s_ = s;

  if (s) {
    // Profile check against x^{-(d-1)-2s} close to grazing.
    const double p = (d - 1) + 2.0 * *s;
    for (double x : {1e-3, 1e-4, 1e-5}) {
      const double ratio = k.b_.b(x) * std::pow(x, p);
      if (!(ratio >= 1.0 / kNoncutoffProfileFactor && ratio <= kNoncutoffProfileFactor))
        throw KernelRejectionError("kernel flagged non-cutoff does not match the x^{-(d-1)-2s} profile");
    }
    k.b_.grazing_exponent = std::max(k.b_.grazing_exponent, p);
  }

  // Integrability of the Carleman B2 kernel; equivalent to the angular moment bound.
  detail::b2_condition_integral(k);

  const double sd2 = sphere_area(d - 1);
  const double pi = std::numbers::pi;
  const double eps = 1e-10;
  k.moment_ = sd2 * integrate_adaptive(
                        [&](double th) {
                          const double x = std::sin(0.5 * th);
                          return x * x * k.b_.b(x) * std::pow(std::sin(th), d - 2);
                        },
                        0.0, pi, 0.0, eps);
  k.c_b_ = sd2 * integrate_adaptive(
                     [&](double th) {
                       const double x = std::sin(0.5 * th);
                       const double bracket = std::expm1(-(d + gamma) * std::log(std::cos(0.5 * th)));
                       return k.b_sym(x) * std::pow(std::sin(th), d - 2) * bracket;
                     },
                     0.0, 0.5 * pi, 0.0, eps);
  return k;
}

}  // namespace kinetic
