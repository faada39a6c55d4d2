#pragma once

// Space-homogeneous Landau solver on a periodic velocity box [-V, V)^d.
//
// Coefficients come from convolutions with the kernel truncated at
// L = 2 sqrt(d) V, whose Fourier transform is known in closed form (Coulomb) or
// as one-dimensional radial integrals. Because the truncation radius exceeds the
// box diameter, the zero-padded periodic convolution reproduces the free-space one.

#include <array>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "kinetic/field.hpp"
#include "kinetic/kernel.hpp"
#include "kinetic/quadrature.hpp"

namespace kinetic {

struct GridField {
  int dim = 3;
  int n = 0;       // nodes per axis
  double V = 0.0;  // box half-width; nodes at -V + i h
  double h = 0.0;  // 2V / n
  double t = 0.0;
  std::vector<double> values;  // row-major, last axis fastest

  static GridField sample(const VelocityField& f, int n, double V);
  std::size_t size() const { return values.size(); }
  Vec3 node(std::size_t idx) const;
  double cell_volume() const;

  // Nonnegativity and containment (boundary ring <= 1e-8 max); throws ConfigurationError.
  void validate() const;
};

// Little-endian binary: int32 d, int32 n, double V, double h, then n^d doubles.
void write_grid(const GridField& g, const std::string& path);
GridField read_grid(const std::string& path);

struct Moments {
  double mass = 0.0;
  Vec3 momentum;
  double energy = 0.0;  // (1/2) int |v|^2 f
};
Moments grid_moments(const GridField& g);

struct RunRecord {
  double t = 0.0;
  double norm_m = 0.0;    // max <v>^m f
  double norm_dpg = 0.0;  // max <v>^{d+gamma} f
  double mass = 0.0;
  Vec3 momentum;
  double energy = 0.0;
  double negmax = 0.0;    // largest clipped negative value in the step
  double max_value = 0.0;
  double cbar_max = 0.0;  // max c_bar at the start of the step
  double dt = 0.0;        // step that produced this record (0 for the initial one)
};

struct RunLog {
  int dim = 3;
  double gamma = 0.0;
  double m = 0.0;
  std::vector<RunRecord> records;
  bool aborted = false;
  std::string abort_reason;
  std::optional<GridField> final_state;
};

struct HomogOptions {
  double m = 4.0;            // weight of the first logged norm
  int max_steps = 1000000;   // hard cap; exceeding it aborts the run
  double min_dt = 1e-14;     // Delta t underflow threshold
};

// Explicit midpoint stepping of df/dt = a_bar : D^2 f + c_bar f with
// dt = cfl h^2 / (2 d max |a_bar|_F) refreshed every step. cfl above 4/pi^2 is
// outside the stability region of the spectral Laplacian.
RunLog homog_run(const GridField& f0, const KernelSpec& k, const QuadratureScheme& q, double t_end, double cfl,
                 const HomogOptions& opt = {});

// CSV with columns t,norm_m,norm_dpg,mass,px,py,pz,energy,negmax.
void write_run_csv(const RunLog& log, std::ostream& os);

struct GronwallResult {
  bool holds = true;
  std::vector<double> margin;  // rhs - lhs per record
};
// ||f(t)||_m <= ||f(0)||_m exp(C int_0^t ||f||_{d+gamma}), trapezoidal in time.
GronwallResult gronwall_check(const RunLog& log, double C, double m);

struct RiccatiResult {
  bool pairwise_holds = true;   // y(t) <= y(s) / (1 - C y(s)(t-s)) for all s < t
  bool rate_holds = true;       // y(s) >= 1/(C(T-s)) when a blowup time is given
  bool envelope_blew_up = false;  // 1 - C y(s)(t-s) <= 0 for some logged pair
  double worst_pairwise = 0.0;  // max of y(t)/envelope - 1
  double worst_rate = 0.0;      // max of 1 - y(s) C (T-s)
};
// Works on y = norm_dpg. T <= last logged time disables the rate check.
RiccatiResult riccati_check(const RunLog& log, double C, double T);

// Coefficient engine shared by the solver and the tests.
class LandauSpectral {
 public:
  LandauSpectral(int d, int n, double V, const KernelSpec& k);
  ~LandauSpectral();
  LandauSpectral(const LandauSpectral&) = delete;
  LandauSpectral& operator=(const LandauSpectral&) = delete;

  int components() const { return dim_ * (dim_ + 1) / 2; }
  // Component c maps to the index pair returned here.
  std::array<int, 2> component(int c) const;

  // a_bar components and c_bar at every node.
  void coefficients(const std::vector<double>& f, std::vector<std::vector<double>>& a, std::vector<double>& cbar);
  // Spectral second derivatives at every node.
  void hessian(const std::vector<double>& f, std::vector<std::vector<double>>& d2f);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  int dim_;
};

// Fourier transform of the truncated kernel |z|^{2+gamma} Pi(z) 1_{|z|<=L},
// written A(k) I + B(k) k_hat k_hat, and of (d-1)(d+gamma)|z|^gamma 1_{|z|<=L}.
struct KernelTransform {
  double A = 0.0, B = 0.0, C = 0.0;
};
KernelTransform truncated_kernel_transform(int d, double gamma, double L, double k, bool closed_form = true);

}  // namespace kinetic
