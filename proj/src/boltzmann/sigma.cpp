// Sigma representation: int int |v - v_*|^gamma b [f(v') f(v'_*) - f(v) f(v_*)] dsigma dv_*.

#include <array>
#include <cmath>
#include <vector>

#include "kinetic/boltzmann.hpp"
#include "kinetic/errors.hpp"
#include "kinetic/parallel.hpp"

namespace kinetic {
namespace {

struct LocalSigma {
  double along, t1, t2;  // components on (u_hat, t1, t2)
  double wb;             // quadrature weight times b
};

std::vector<LocalSigma> local_sigma_rule(const KernelSpec& k, int n) {
  const DirectionRule ref = sphere_rule(k.dim(), n, k.dim() == 3 ? Vec3{0, 0, 1} : Vec3{1, 0, 0});
  std::vector<LocalSigma> out;
  for (std::size_t i = 0; i < ref.dir.size(); ++i) {
    const Vec3& s = ref.dir[i];
    LocalSigma ls = k.dim() == 3 ? LocalSigma{s.z, s.x, s.y, 0.0} : LocalSigma{s.x, s.y, 0.0, 0.0};
    const double x = std::sqrt(std::max(0.0, 0.5 * (1.0 - ls.along)));  // sin(theta/2)
    ls.wb = ref.w[i] * k.b(x);
    out.push_back(ls);
  }
  return out;
}

}  // namespace

BoltzmannEvaluation boltzmann_sigma_evaluate(const VelocityField& f, const Vec3& v, const KernelSpec& k,
                                             const QuadratureScheme& q) {
  if (k.op() != Operator::Boltzmann) throw ArgumentError("kernel is not a Boltzmann kernel");
  if (!k.cutoff())
    throw CapabilityError("sigma-form evaluation needs an integrable angular kernel; use q_boltzmann_carleman");
  if (f.dim() != k.dim()) throw ArgumentError("field and kernel dimensions differ");
  q.validate();

  const int d = k.dim();
  const double g = k.gamma();
  const WeightedNodes outer = polar_ball_nodes(d, v, g, q);
  const std::vector<LocalSigma> sig = local_sigma_rule(k, q.angular_nodes);
  const std::size_t ns = sig.size();
  std::vector<double> wb(ns);
  for (std::size_t i = 0; i < ns; ++i) wb[i] = sig[i].wb;
  const double b_total = pairwise_sum(wb);
  const double fv = f(v);

  constexpr std::size_t kChunk = 32;
  const std::size_t n = outer.size();
  const std::size_t chunks = chunk_count(n, kChunk);
  std::vector<std::array<double, 3>> partial(chunks);
  for_each_chunk(n, kChunk, [&](std::size_t c, std::size_t b, std::size_t e) {
    const std::size_t m = e - b;
    std::vector<double> fstar(m);
    f.eval_batch(std::span(outer.x).subspan(b, m), fstar);
    std::vector<Vec3> pts(2 * m * ns);
    std::vector<double> r(m);
    for (std::size_t j = 0; j < m; ++j) {
      const Vec3& vs = outer.x[b + j];
      const Vec3 u = v - vs;
      r[j] = norm(u);
      const Vec3 uh = (1.0 / r[j]) * u;
      Vec3 t1, t2;
      if (d == 3) {
        orthonormal_complement(uh, t1, t2);
      } else {
        t1 = perpendicular_2d(uh);
      }
      const Vec3 mid = 0.5 * (v + vs);
      for (std::size_t i = 0; i < ns; ++i) {
        const Vec3 s = sig[i].along * uh + sig[i].t1 * t1 + sig[i].t2 * t2;
        pts[2 * (j * ns + i)] = mid + (0.5 * r[j]) * s;
        pts[2 * (j * ns + i) + 1] = mid - (0.5 * r[j]) * s;
      }
    }
    std::vector<double> fp(pts.size());
    f.eval_batch(pts, fp);
    std::vector<double> gain(m), loss(m), prod(ns);
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t i = 0; i < ns; ++i) prod[i] = wb[i] * fp[2 * (j * ns + i)] * fp[2 * (j * ns + i) + 1];
      const double kin = outer.w[b + j] * std::pow(r[j], g);
      gain[j] = kin * pairwise_sum(prod);
      loss[j] = kin * b_total * fv * fstar[j];
    }
    const double gsum = pairwise_sum(gain), lsum = pairwise_sum(loss);
    partial[c] = {gsum, lsum, 0.0};
  });
  std::vector<double> gcol(chunks), lcol(chunks);
  for (std::size_t c = 0; c < chunks; ++c) {
    gcol[c] = partial[c][0];
    lcol[c] = partial[c][1];
  }
  BoltzmannEvaluation out;
  out.part_a = pairwise_sum(gcol);
  out.part_b = pairwise_sum(lcol);
  out.value = out.part_a - out.part_b;
  out.scale = out.part_a + out.part_b;
  return out;
}

double q_boltzmann_sigma(const VelocityField& f, const Vec3& v, const KernelSpec& k, const QuadratureScheme& q) {
  return boltzmann_sigma_evaluate(f, v, k, q).value;
}

}  // namespace kinetic
