// Carleman representation. With v'_* = v + rho_* n and v' = v + x, x orthogonal to n,
//   Q_s  = int f(v'_*) int_{x . n = 0} [f(v+x) - f(v) - 1_{|x|<h0} grad f(v).x] B2 dx dv'_*,
//   B2   = 2^{d-1} r^{gamma+2-d} b_sym(|x|/r) / rho_*,   r^2 = |x|^2 + rho_*^2,
//   Q_ns = C_b f(v) int f(w) |v-w|^gamma dw.
// The symmetrized kernel is supported on |x| <= rho_*.

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "kinetic/boltzmann.hpp"
#include "kinetic/errors.hpp"
#include "kinetic/parallel.hpp"

namespace kinetic {

BoltzmannEvaluation boltzmann_carleman_evaluate(const VelocityField& f, const Vec3& v, const KernelSpec& k,
                                                const QuadratureScheme& q) {
  if (k.op() != Operator::Boltzmann) throw ArgumentError("kernel is not a Boltzmann kernel");
  if (f.dim() != k.dim()) throw ArgumentError("field and kernel dimensions differ");
  q.validate();
  const int d = k.dim();
  const double g = k.gamma();
  const double h0 = q.regularization_radius;
  const double fv = f(v);

  Vec3 grad;
  bool taylor = true;
  if (!k.cutoff()) {
    if (!f.has_gradient() && !f.differentiable())
      throw CapabilityError("non-cutoff Carleman evaluation needs the gradient of f at v");
    grad = f.gradient(v, q.fd_step, q.rel_tol);
  } else if (f.has_gradient()) {
    grad = f.gradient(v);
  } else {
    taylor = false;  // the odd first-order term cancels on the symmetric rule anyway
  }

  // Jacobi exponent of the hyperplane radial integrand near x = 0.
  const double pb = k.angular().grazing_exponent;
  const double beta_h = k.cutoff() ? (d - 2) - pb : d - pb;

  // Circle (d = 3) or the two-point sphere S^0 (d = 2) inside the hyperplane.
  const int nphi = d == 3 ? 2 * q.angular_nodes : 2;
  const double wphi = d == 3 ? std::numbers::pi / q.angular_nodes : 1.0;

  const WeightedNodes outer = polar_ball_nodes(d, v, g + 2.0, q);
  const std::size_t n = outer.size();
  constexpr std::size_t kChunk = 16;
  const std::size_t chunks = chunk_count(n, kChunk);
  std::vector<std::array<double, 2>> partial(chunks);
  const double two_dm1 = std::pow(2.0, d - 1);

  for_each_chunk(n, kChunk, [&](std::size_t c, std::size_t b, std::size_t e) {
    const std::size_t m = e - b;
    std::vector<double> fo(m);
    f.eval_batch(std::span(outer.x).subspan(b, m), fo);
    std::vector<double> contrib(m, 0.0), mag(m, 0.0);
    std::vector<double> rho, wr, fvals, terms;
    std::vector<Vec3> pts, dirs(nphi);
    std::vector<double> gdot(nphi);
    for (std::size_t j = 0; j < m; ++j) {
      if (fo[j] == 0.0) continue;
      const Vec3 dv = outer.x[b + j] - v;
      const double rs = norm(dv);
      const Vec3 nrm = (1.0 / rs) * dv;
      if (d == 3) {
        Vec3 t1, t2;
        orthonormal_complement(nrm, t1, t2);
        for (int k2 = 0; k2 < nphi; ++k2) {
          const double phi = (k2 + 0.5) * wphi;
          dirs[k2] = std::cos(phi) * t1 + std::sin(phi) * t2;
        }
      } else {
        dirs[0] = perpendicular_2d(nrm);
        dirs[1] = -dirs[0];
      }
      for (int k2 = 0; k2 < nphi; ++k2) gdot[k2] = taylor ? dot(grad, dirs[k2]) : 0.0;

      radial_panels(rs, std::min(h0, rs), beta_h, q.panel_width, q.hyperplane_nodes, rho, wr);
      pts.resize(rho.size() * nphi);
      for (std::size_t i = 0; i < rho.size(); ++i)
        for (int k2 = 0; k2 < nphi; ++k2) pts[i * nphi + k2] = v + rho[i] * dirs[k2];
      fvals.resize(pts.size());
      f.eval_batch(pts, fvals);
      terms.assign(rho.size(), 0.0);
      for (std::size_t i = 0; i < rho.size(); ++i) {
        const double r = std::sqrt(rho[i] * rho[i] + rs * rs);
        const double B2 = two_dm1 * std::pow(r, g + 2 - d) * k.b_sym(rho[i] / r) / rs;
        const bool in_zone = rho[i] < h0;
        double s = 0.0;
        for (int k2 = 0; k2 < nphi; ++k2) {
          double diff = fvals[i * nphi + k2] - fv;
          if (in_zone) diff -= rho[i] * gdot[k2];
          s += diff;
        }
        terms[i] = wr[i] * wphi * std::pow(rho[i], d - 2) * B2 * s;
      }
      const double I = pairwise_sum(terms);
      contrib[j] = outer.w[b + j] * fo[j] * I;
      mag[j] = std::abs(contrib[j]);
    }
    partial[c] = {pairwise_sum(contrib), pairwise_sum(mag)};
  });
  std::vector<double> col_a(chunks), col_m(chunks);
  for (std::size_t c = 0; c < chunks; ++c) {
    col_a[c] = partial[c][0];
    col_m[c] = partial[c][1];
  }
  const double qs = pairwise_sum(col_a);
  const double qs_mag = pairwise_sum(col_m);

  // Non-singular part.
  double qns = 0.0;
  if (fv != 0.0 && k.c_b() != 0.0) {
    const WeightedNodes conv = polar_ball_nodes(d, v, g, q);
    std::vector<double> fw(conv.size());
    f.eval_batch(conv.x, fw);
    for (std::size_t i = 0; i < conv.size(); ++i) fw[i] *= conv.w[i] * std::pow(norm(v - conv.x[i]), g);
    qns = k.c_b() * fv * pairwise_sum(fw);
  }

  BoltzmannEvaluation out;
  out.part_a = qs;
  out.part_b = qns;
  out.value = qs + qns;
  out.scale = qs_mag + std::abs(qns);
  return out;
}

double q_boltzmann_carleman(const VelocityField& f, const Vec3& v, const KernelSpec& k,
                            const QuadratureScheme& q) {
  return boltzmann_carleman_evaluate(f, v, k, q).value;
}

}  // namespace kinetic
