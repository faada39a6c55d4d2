// Reference kernels. These define the semantics the AVX2 variants must match.

#include <cmath>
#include <limits>

#include "kinetic/simd.hpp"

namespace kinetic::simd {
namespace {

void exp_scalar(const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = x[i] < -708.0 ? 0.0 : std::exp(x[i]);
}

double sum_scalar(const double* x, std::size_t n) {
  if (n <= 32) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i];
    return s;
  }
  const std::size_t half = n / 2;
  return sum_scalar(x, half) + sum_scalar(x + half, n - half);
}

void contract_scalar(const double* const* a, const double* const* b, const double* coef, int terms,
                     std::size_t n, double* out) {
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (int t = 0; t < terms; ++t) s += coef[t] * a[t][i] * b[t][i];
    out[i] = s;
  }
}

double axpy_min_scalar(double s, const double* x, const double* y, double* out, std::size_t n) {
  double mn = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = y[i] + s * x[i];
    mn = std::fmin(mn, out[i]);
  }
  return mn;
}

MaxIndex weighted_max_scalar(const double* w, const double* f, std::size_t n) {
  MaxIndex r{-std::numeric_limits<double>::infinity(), 0};
  for (std::size_t i = 0; i < n; ++i) {
    const double v = w[i] * f[i];
    if (v > r.value) r = {v, i};
  }
  return r;
}

RowMoments row_moments_scalar(const double* f, const double* x, std::size_t n) {
  RowMoments m{0, 0, 0};
  for (std::size_t i = 0; i < n; ++i) {
    m.s0 += f[i];
    m.s1 += f[i] * x[i];
    m.s2 += f[i] * x[i] * x[i];
  }
  return m;
}

void scale_complex_scalar(const double* c, const double* k, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    out[2 * i] = c[2 * i] * k[i];
    out[2 * i + 1] = c[2 * i + 1] * k[i];
  }
}

const KernelTable kScalar{exp_scalar,          sum_scalar,         contract_scalar,     axpy_min_scalar,
                          weighted_max_scalar, row_moments_scalar, scale_complex_scalar};

}  // namespace

const KernelTable& detail::scalar_table() { return kScalar; }

}  // namespace kinetic::simd
