// AVX2 + FMA variants. This translation unit is compiled with -mavx2 -mfma and
// is only entered after a runtime CPUID check.

#include "kinetic/simd.hpp"

#if defined(__x86_64__) && defined(__AVX2__) && defined(__FMA__)
#define KINETIC_HAVE_AVX2 1
#include <immintrin.h>

#include <cmath>
#include <limits>
#else
#define KINETIC_HAVE_AVX2 0
#endif

namespace kinetic::simd {

#if KINETIC_HAVE_AVX2
namespace {

// Cephes-style exp: range reduction by ln 2, rational approximation on
// [-ln2/2, ln2/2], then exponent-field scaling.
inline __m256d exp_pd(__m256d x) {
  const __m256d lo = _mm256_set1_pd(-708.0);
  const __m256d hi = _mm256_set1_pd(709.0);
  const __m256d under = _mm256_cmp_pd(x, lo, _CMP_LT_OQ);
  x = _mm256_min_pd(_mm256_max_pd(x, lo), hi);

  const __m256d n = _mm256_round_pd(_mm256_mul_pd(x, _mm256_set1_pd(1.4426950408889634073599)),
                                    _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  x = _mm256_fnmadd_pd(n, _mm256_set1_pd(6.93145751953125E-1), x);
  x = _mm256_fnmadd_pd(n, _mm256_set1_pd(1.42860682030941723212E-6), x);

  const __m256d xx = _mm256_mul_pd(x, x);
  __m256d p = _mm256_fmadd_pd(_mm256_set1_pd(1.26177193074810590878E-4), xx,
                              _mm256_set1_pd(3.02994407707441961300E-2));
  p = _mm256_fmadd_pd(p, xx, _mm256_set1_pd(9.99999999999999999910E-1));
  p = _mm256_mul_pd(p, x);
  __m256d q = _mm256_fmadd_pd(_mm256_set1_pd(3.00198505138664455042E-6), xx,
                              _mm256_set1_pd(2.52448340349684104192E-3));
  q = _mm256_fmadd_pd(q, xx, _mm256_set1_pd(2.27265548208155028766E-1));
  q = _mm256_fmadd_pd(q, xx, _mm256_set1_pd(2.00000000000000000009E0));
  __m256d e = _mm256_div_pd(p, _mm256_sub_pd(q, p));
  e = _mm256_fmadd_pd(_mm256_set1_pd(2.0), e, _mm256_set1_pd(1.0));

  const __m256i n64 = _mm256_cvtepi32_epi64(_mm256_cvtpd_epi32(n));
  const __m256i bits = _mm256_slli_epi64(_mm256_add_epi64(n64, _mm256_set1_epi64x(1023)), 52);
  e = _mm256_mul_pd(e, _mm256_castsi256_pd(bits));
  return _mm256_blendv_pd(e, _mm256_setzero_pd(), under);
}

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

void exp_avx2(const double* x, double* y, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(y + i, exp_pd(_mm256_loadu_pd(x + i)));
  if (i < n) {
    alignas(32) double buf[4] = {0, 0, 0, 0};
    for (std::size_t j = i; j < n; ++j) buf[j - i] = x[j];
    _mm256_store_pd(buf, exp_pd(_mm256_load_pd(buf)));
    for (std::size_t j = i; j < n; ++j) y[j] = buf[j - i];
  }
}

double sum_avx2(const double* x, std::size_t n) {
  if (n <= 32) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
    double s = hsum(acc);
    for (; i < n; ++i) s += x[i];
    return s;
  }
  const std::size_t half = n / 2;
  return sum_avx2(x, half) + sum_avx2(x + half, n - half);
}

void contract_avx2(const double* const* a, const double* const* b, const double* coef, int terms,
                   std::size_t n, double* out) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d s = _mm256_setzero_pd();
    for (int t = 0; t < terms; ++t) {
      const __m256d ab = _mm256_mul_pd(_mm256_loadu_pd(a[t] + i), _mm256_loadu_pd(b[t] + i));
      s = _mm256_fmadd_pd(_mm256_set1_pd(coef[t]), ab, s);
    }
    _mm256_storeu_pd(out + i, s);
  }
  for (; i < n; ++i) {
    double s = 0.0;
    for (int t = 0; t < terms; ++t) s += coef[t] * a[t][i] * b[t][i];
    out[i] = s;
  }
}

double axpy_min_avx2(double s, const double* x, const double* y, double* out, std::size_t n) {
  const __m256d vs = _mm256_set1_pd(s);
  __m256d mn = _mm256_set1_pd(std::numeric_limits<double>::infinity());
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d r = _mm256_fmadd_pd(vs, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
    _mm256_storeu_pd(out + i, r);
    mn = _mm256_min_pd(mn, r);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, mn);
  double m = std::fmin(std::fmin(lanes[0], lanes[1]), std::fmin(lanes[2], lanes[3]));
  for (; i < n; ++i) {
    out[i] = y[i] + s * x[i];
    m = std::fmin(m, out[i]);
  }
  return m;
}

MaxIndex weighted_max_avx2(const double* w, const double* f, std::size_t n) {
  __m256d best = _mm256_set1_pd(-std::numeric_limits<double>::infinity());
  __m256d best_idx = _mm256_setzero_pd();
  __m256d idx = _mm256_setr_pd(0, 1, 2, 3);
  const __m256d four = _mm256_set1_pd(4.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_mul_pd(_mm256_loadu_pd(w + i), _mm256_loadu_pd(f + i));
    const __m256d gt = _mm256_cmp_pd(v, best, _CMP_GT_OQ);
    best = _mm256_blendv_pd(best, v, gt);
    best_idx = _mm256_blendv_pd(best_idx, idx, gt);
    idx = _mm256_add_pd(idx, four);
  }
  alignas(32) double bv[4], bi[4];
  _mm256_store_pd(bv, best);
  _mm256_store_pd(bi, best_idx);
  MaxIndex r{-std::numeric_limits<double>::infinity(), 0};
  for (int l = 0; l < 4; ++l) {
    const auto li = static_cast<std::size_t>(bi[l]);
    if (bv[l] > r.value || (bv[l] == r.value && li < r.index)) r = {bv[l], li};
  }
  for (; i < n; ++i) {
    const double v = w[i] * f[i];
    if (v > r.value) r = {v, i};
  }
  return r;
}

RowMoments row_moments_avx2(const double* f, const double* x, std::size_t n) {
  __m256d s0 = _mm256_setzero_pd(), s1 = _mm256_setzero_pd(), s2 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d fv = _mm256_loadu_pd(f + i);
    const __m256d xv = _mm256_loadu_pd(x + i);
    const __m256d fx = _mm256_mul_pd(fv, xv);
    s0 = _mm256_add_pd(s0, fv);
    s1 = _mm256_add_pd(s1, fx);
    s2 = _mm256_fmadd_pd(fx, xv, s2);
  }
  RowMoments m{hsum(s0), hsum(s1), hsum(s2)};
  for (; i < n; ++i) {
    m.s0 += f[i];
    m.s1 += f[i] * x[i];
    m.s2 += f[i] * x[i] * x[i];
  }
  return m;
}

void scale_complex_avx2(const double* c, const double* k, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d kk = _mm256_permute4x64_pd(_mm256_castpd128_pd256(_mm_loadu_pd(k + i)), 0x50);
    _mm256_storeu_pd(out + 2 * i, _mm256_mul_pd(_mm256_loadu_pd(c + 2 * i), kk));
  }
  for (; i < n; ++i) {
    out[2 * i] = c[2 * i] * k[i];
    out[2 * i + 1] = c[2 * i + 1] * k[i];
  }
}

const KernelTable kAvx2{exp_avx2,          sum_avx2,         contract_avx2,     axpy_min_avx2,
                        weighted_max_avx2, row_moments_avx2, scale_complex_avx2};

}  // namespace

const KernelTable* detail::avx2_table() { return &kAvx2; }

#else

const KernelTable* detail::avx2_table() { return nullptr; }

#endif

}  // namespace kinetic::simd
