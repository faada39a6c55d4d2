#pragma once

// Hot-loop kernels with a scalar reference implementation and an AVX2/FMA
// variant. The variant is picked once at runtime from CPUID; setting the
// environment variable KINETIC_SIMD=scalar (or calling force_backend) pins the
// reference path. Both paths are exercised by the equivalence tests.

#include <cstddef>

namespace kinetic::simd {

enum class Backend { Scalar, Avx2 };

struct MaxIndex {
  double value;
  std::size_t index;  // first index attaining the maximum
};

struct RowMoments {
  double s0, s1, s2;  // sum f, sum f x, sum f x^2
};

struct KernelTable {
  // y[i] = exp(x[i]); arguments below -708 flush to 0.
  void (*exp)(const double* x, double* y, std::size_t n);
  // Sum with a fixed blocked pairwise association order.
  double (*sum)(const double* x, std::size_t n);
  // out[i] = sum_t coef[t] * a[t][i] * b[t][i]
  void (*contract)(const double* const* a, const double* const* b, const double* coef, int terms,
                   std::size_t n, double* out);
  // out[i] = y[i] + s * x[i]; returns min over out.
  double (*axpy_min)(double s, const double* x, const double* y, double* out, std::size_t n);
  MaxIndex (*weighted_max)(const double* w, const double* f, std::size_t n);
  RowMoments (*row_moments)(const double* f, const double* x, std::size_t n);
  // Interleaved complex array c (re, im pairs) scaled by the real array k.
  void (*scale_complex)(const double* c, const double* k, double* out, std::size_t n);
};

bool avx2_available();
Backend active_backend();
void force_backend(Backend b);
const char* backend_name(Backend b);

const KernelTable& kernels();
const KernelTable& kernels(Backend b);

namespace detail {
const KernelTable& scalar_table();
const KernelTable* avx2_table();  // nullptr when not compiled in
}  // namespace detail

}  // namespace kinetic::simd
