#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kinetic/barrier.hpp"
#include "kinetic/field.hpp"
#include "kinetic/kernel.hpp"
#include "kinetic/quadrature.hpp"

namespace kinetic {

// ---------------------------------------------------------------- reports

struct CertificateEntry {
  std::string label;
  double argument = 0.0;  // the parameter value at which `value` was sampled
  double value = 0.0;
};

// Outcome of a threshold search. `value` is empty when the search failed; the
// certificate then records the evidence of failure.
struct ThresholdReport {
  std::string parameter;
  std::optional<double> value;
  std::vector<CertificateEntry> certificate;
  std::map<std::string, double> grid;

  bool certified() const { return value.has_value(); }
};

std::string to_json(const ThresholdReport& r);
ThresholdReport threshold_report_from_json(const std::string& text);

// ---------------------------------------------------------------- contact points

struct ContactConfiguration {
  Barrier barrier;
  VelocityField field;
  Vec3 v0;
};

// Checks 0 <= field <= barrier on the sup-norm shells plus a cloud around v0, and
// field(v0) = barrier(v0) to 1e-12 relative. Throws ConfigurationError.
ContactConfiguration make_contact_configuration(const Barrier& b, const VelocityField& f, const Vec3& v0,
                                                const QuadratureScheme& q);

struct ContactEstimate {
  double lhs = 0.0;         // Q(f, f)(v0)
  double bound_unit = 0.0;  // b(v0)^2 <v0>^{d+gamma}
  double ratio = 0.0;
};

ContactEstimate contact_estimate_check(const ContactConfiguration& cfg, const KernelSpec& k,
                                       const QuadratureScheme& q);

// b(v) exp(-(|v - v0|^2 / (2 width^2))^power): touches b exactly at v0. Powers
// above 1 give flat-topped windows whose curvature at v0 is that of b alone.
VelocityField windowed_barrier(const Barrier& b, const Vec3& v0, double width, int power = 1);
// b(v) psi(|v|) with psi = 1 on [0, r1], a C2 quintic taper to 0 at r2.
VelocityField capped_barrier(const Barrier& b, double r1, double r2);

struct ContactSample {
  Vec3 v0;
  double alpha = 0.0, width = 0.0;
  int power = 1;
  ContactEstimate estimate;
};

struct ContactSweep {
  double measured_C = 0.0;  // max ratio over the family
  std::vector<ContactSample> samples;
  std::uint64_t seed = 0;
};

// Randomized family of windowed-barrier contact configurations (|v0| in
// [r_min, r_max], width in [0.3, 1.5], alpha in [0.5, 2], window power in
// {1, 2, 3}) drawn from splitmix64(seed).
ContactSweep contact_sweep(const KernelSpec& k, const QuadratureScheme& q, double m, std::uint64_t seed, int count,
                           double r_min = 1.0, double r_max = 3.0);

// ---------------------------------------------------------------- Landau window

// G(w) = m|e-w|^2 [(m+2) Pi(e-w)e.e - (d-1)] + (d-1)(d+gamma), with w given by
// its length eps and the angle alpha to e.
double landau_integrand(double m, int d, double gamma, double eps, double alpha);

// Sup of G over a grid_n x grid_n grid on [0, delta] x [0, pi].
double landau_integrand_sup(double m, int d, double gamma, double delta, int grid_n);

// Largest delta (bisection to rel_tol) with sup G <= 0 on B_delta. Throws
// InfeasibilityError when m <= d + gamma since then G(0) >= 0.
ThresholdReport landau_delta_search(double m, int d, double gamma, double rel_tol, int grid_n = 257);

// ---------------------------------------------------------------- Boltzmann hyperplane lemma

// Left side of the scaled hyperplane inequality at the unit contact point e = e_1:
// integral over the hyperplane through e orthogonal to w - e of
//   [|z|^{-m} r^{2-d+gamma} - |e-w|^{gamma+d} r^{-2(d-1)}] b(|e-z|/r)
//   + |z|^{-m} r^{2-d+gamma} b(|e-w|/r),   r = |z - w|.
// Requires |w| < 1/2 (DomainError otherwise).
double boltzmann_hyperplane_integral(double m, const Vec3& w, const KernelSpec& k, const QuadratureScheme& q);

// Smallest m with J(m, 0) < 0, by scan then bisection to rel_tol; ceiling 200.
// A failed search returns a report without value.
ThresholdReport boltzmann_m0_search(const KernelSpec& k, const QuadratureScheme& q, double ceiling = 200.0);

// Largest delta < 1/2 with J(m, w) <= 0 for every sampled |w| <= delta, over 64
// angles between w and e. Throws InfeasibilityError if J(m, 0) >= 0.
ThresholdReport boltzmann_delta_search(double m, const KernelSpec& k, const QuadratureScheme& q);

// Inversion about Q taking the hyperplane through P orthogonal to Q - P onto the
// sphere with diameter [P, Q], and its surface Jacobian (|P-Q| / |z-Q|)^{2(d-1)}.
Vec3 stereographic_point(const Vec3& P, const Vec3& Q, const Vec3& z);
double stereographic_jacobian(const Vec3& P, const Vec3& Q, const Vec3& z, int d);

// ---------------------------------------------------------------- crude large-velocity bound

// |v|^{-m} S((|v| - delta)/delta) with S the C2 quintic smoothstep: vanishes on
// B_delta, equals |v|^{-m} beyond 2 delta, and f(e) = 1 for delta <= 1/2.
VelocityField crude_bound_field(int d, double m, double delta);

// Q(f, f)(e) under the hypotheses f <= |v|^{-m} with m the declared decay
// exponent, f = 0 on B_delta (inner void declared), f(e) = 1.
double crude_bound_check(const VelocityField& f, const Vec3& e, const KernelSpec& k, const QuadratureScheme& q);

// Landau upper envelope m(m+2) int |e-w|^{2+gamma} f(w) dw + c_bar(e) for the
// same f; always dominates crude_bound_check.
double crude_bound_envelope(const VelocityField& f, const Vec3& e, const KernelSpec& k, const QuadratureScheme& q);

// ---------------------------------------------------------------- seeding

// splitmix64: state += 0x9E3779B97F4A7C15, then the standard xor-shift-multiply
// finalizer. Doubles take the top 53 bits.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  double uniform();  // [0, 1)
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  Vec3 unit_vector(int d);

 private:
  std::uint64_t state_;
};

}  // namespace kinetic
