#pragma once

#include <span>
#include <vector>

#include "kinetic/field.hpp"
#include "kinetic/quadrature.hpp"

namespace kinetic {

struct SupNorm {
  double value = 0.0;
  Vec3 argmax;
};

// Max of <v>^m f(v) over the origin plus sup_radial_samples spherical shells
// out to V, each carrying the product direction rule of q. Ties go to the
// lexicographically smallest node.
SupNorm weighted_sup_norm(const VelocityField& f, double m, const QuadratureScheme& q);
SupNorm weighted_sup_norm(const VelocityField& f, double m, std::span<const Vec3> nodes);

// The shell sampling grid used above.
std::vector<Vec3> sup_norm_nodes(int d, const QuadratureScheme& q);

}  // namespace kinetic
