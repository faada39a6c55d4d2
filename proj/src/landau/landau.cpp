#include "kinetic/landau.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "kinetic/errors.hpp"
#include "kinetic/parallel.hpp"

namespace kinetic {
namespace {

constexpr std::size_t kChunk = 4096;

void check_inputs(const VelocityField& f, const KernelSpec& k, const QuadratureScheme& q) {
  if (k.op() != Operator::Landau) throw ArgumentError("kernel is not a Landau kernel");
  if (f.dim() != k.dim()) throw ArgumentError("field and kernel dimensions differ");
  if (k.dim() == 2 && k.gamma() == -2.0)
    throw UnsupportedParameterError("the two-dimensional Coulomb case gamma = -2 is not supported");
  q.validate();
}

double tail_estimate(const DecayInfo& dec, int d, double p, double V) {
  if (dec.amplitude == 0.0) return 0.0;
  const double excess = dec.exponent - d - p;
  if (excess <= 0.0) return std::numeric_limits<double>::infinity();
  // int_{|w|>V} (2|w|)^p A |w|^{-m_f} dw with |v| <= V.
  return dec.amplitude * sphere_area(d) * std::pow(2.0, std::max(p, 0.0)) * std::pow(V, -excess) / excess;
}

}  // namespace

LandauCoefficients landau_coefficients(const VelocityField& f, const Vec3& v, const KernelSpec& k,
                                       const QuadratureScheme& q) {
  check_inputs(f, k, q);
  const int d = k.dim();
  const double g = k.gamma();
  const bool coulomb = g == -d;
  // The a_bar integrand is |z|^{2+gamma} times a bounded tensor; the c_bar
  // integrand is |z|^gamma. One rule serves both: its Jacobi weight uses the
  // stronger singularity, and the a_bar integrand is that times |z|^2.
  const double p = coulomb ? 2.0 + g : g;
  const WeightedNodes nodes = polar_ball_nodes(d, v, p, q);
  const std::size_t n = nodes.size();

  const std::size_t chunks = chunk_count(n, kChunk);
  std::vector<std::array<double, 7>> partial(chunks);
  for_each_chunk(n, kChunk, [&](std::size_t c, std::size_t b, std::size_t e) {
    std::vector<double> fv(e - b);
    f.eval_batch(std::span(nodes.x).subspan(b, e - b), fv);
    std::array<std::vector<double>, 7> terms;
    for (auto& t : terms) t.resize(e - b);
    for (std::size_t i = b; i < e; ++i) {
      const Vec3 z = v - nodes.x[i];
      const double r2 = norm2(z);
      const double wf = nodes.w[i] * fv[i - b];
      const double rg = std::pow(r2, 0.5 * g);  // |z|^gamma
      const double s = wf * rg;
      // |z|^gamma (|z|^2 delta_ij - z_i z_j)
      terms[0][i - b] = s * (r2 - z.x * z.x);
      terms[1][i - b] = s * (r2 - z.y * z.y);
      terms[2][i - b] = s * (r2 - z.z * z.z);
      terms[3][i - b] = -s * z.x * z.y;
      terms[4][i - b] = -s * z.x * z.z;
      terms[5][i - b] = -s * z.y * z.z;
      terms[6][i - b] = coulomb ? 0.0 : s;
    }
    for (int t = 0; t < 7; ++t) partial[c][t] = pairwise_sum(terms[t]);
  });
  std::array<double, 7> tot{};
  for (int t = 0; t < 7; ++t) {
    std::vector<double> col(chunks);
    for (std::size_t c = 0; c < chunks; ++c) col[c] = partial[c][t];
    tot[t] = pairwise_sum(col);
  }

  LandauCoefficients out;
  out.at_point = v;
  Mat3& a = out.a_bar;
  a(0, 0) = tot[0];
  a(1, 1) = tot[1];
  a(2, 2) = d == 3 ? tot[2] : 0.0;
  a(0, 1) = a(1, 0) = tot[3];
  if (d == 3) {
    a(0, 2) = a(2, 0) = tot[4];
    a(1, 2) = a(2, 1) = tot[5];
  }
  // In two dimensions the |z|^2 delta_22 term leaks into the unused slot; it was dropped above.
  if (coulomb) {
    out.c_bar = (d - 1) * sphere_area(d) * f(v);
  } else {
    out.c_bar = (d - 1) * (d + g) * tot[6];
  }

  const double tr = a.trace();
  const auto ev = symmetric_eigenvalues(a);
  if (ev[0] < -q.rel_tol * std::abs(tr) - 1e-300)
    throw EvaluationError("a_bar lost positive semidefiniteness at v = " + to_string(v) +
                          "; refine the quadrature scheme");

  out.truncation_estimate = std::max(tail_estimate(f.decay(), d, 2.0 + g, q.outer_radius),
                                     coulomb ? 0.0 : (d - 1) * (d + g) * tail_estimate(f.decay(), d, g, q.outer_radius));
  return out;
}

LandauEvaluation landau_evaluate(const VelocityField& f, const Vec3& v, const KernelSpec& k,
                                 const QuadratureScheme& q) {
  check_inputs(f, k, q);
  LandauEvaluation e;
  // Differentiability is checked before the expensive coefficient integrals.
  e.hessian = f.hessian(v, q.fd_step, q.rel_tol);
  e.coeffs = landau_coefficients(f, v, k, q);
  e.f_at_v = f(v);
  double s = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) s += std::abs(e.coeffs.a_bar(i, j) * e.hessian(i, j));
  e.value = contract(e.coeffs.a_bar, e.hessian) + e.coeffs.c_bar * e.f_at_v;
  e.scale = s + std::abs(e.coeffs.c_bar * e.f_at_v);
  return e;
}

double q_landau(const VelocityField& f, const Vec3& v, const KernelSpec& k, const QuadratureScheme& q) {
  return landau_evaluate(f, v, k, q).value;
}

}  // namespace kinetic
