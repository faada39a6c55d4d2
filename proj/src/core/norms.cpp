#include "kinetic/norms.hpp"

#include <cmath>

#include "kinetic/errors.hpp"

namespace kinetic {

std::vector<Vec3> sup_norm_nodes(int d, const QuadratureScheme& q) {
  const DirectionRule dirs = sphere_rule(d, q.angular_nodes);
  std::vector<Vec3> nodes;
  nodes.reserve(1 + dirs.dir.size() * q.sup_radial_samples);
  nodes.push_back({});
  for (int j = 1; j <= q.sup_radial_samples; ++j) {
    const double r = q.outer_radius * j / q.sup_radial_samples;
    for (const Vec3& om : dirs.dir) nodes.push_back(r * om);
  }
  return nodes;
}

SupNorm weighted_sup_norm(const VelocityField& f, double m, std::span<const Vec3> nodes) {
  if (!(m >= 0.0)) throw ArgumentError("weight exponent m must be nonnegative");
  std::vector<double> vals(nodes.size());
  f.eval_batch(nodes, vals);
  SupNorm best{-1.0, {}};
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!std::isfinite(vals[i])) throw EvaluationError("non-finite field value at v = " + to_string(nodes[i]));
    const double w = m == 0.0 ? vals[i] : vals[i] * std::pow(bracket(nodes[i]), m);
    if (w > best.value || (w == best.value && lex_less(nodes[i], best.argmax))) best = {w, nodes[i]};
  }
  if (nodes.empty()) best.value = 0.0;
  return best;
}

SupNorm weighted_sup_norm(const VelocityField& f, double m, const QuadratureScheme& q) {
  const auto nodes = sup_norm_nodes(f.dim(), q);
  return weighted_sup_norm(f, m, nodes);
}

}  // namespace kinetic
