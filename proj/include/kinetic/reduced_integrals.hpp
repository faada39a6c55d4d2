#pragma once

#include "kinetic/kernel.hpp"

namespace kinetic::detail {

// 2^{d-1} |S^{d-2}| int_0^1 (1+t^2)^{(gamma+2-d)/2} b_sym(t / sqrt(1+t^2)) t^d dt,
// the second moment of the Carleman B2 kernel over the hyperplane at unit
// distance. Throws KernelRejectionError when the integral diverges.
double b2_condition_integral(const KernelSpec& k, double rel_tol = 1e-10);

}  // namespace kinetic::detail
