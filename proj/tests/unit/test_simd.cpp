#include <cmath>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <string>
#include <vector>

#include "doctest.h"
#include "kinetic/field.hpp"
#include "kinetic/norms.hpp"
#include "kinetic/simd.hpp"
#include "kinetic/solver.hpp"
#include "kinetic/verify.hpp"

using namespace kinetic;
using namespace kinetic::simd;

namespace {

const std::vector<std::size_t> kLengths{0, 1, 2, 3, 4, 5, 7, 8, 31, 32, 33, 63, 100, 1000, 4097};

std::vector<double> random_vector(std::size_t n, std::uint64_t seed, double lo, double hi) {
  SplitMix64 rng(seed);
  std::vector<double> x(n);
  for (double& v : x) v = rng.uniform(lo, hi);
  return x;
}

double abs_sum(const std::vector<double>& x) {
  double s = 0.0;
  for (double v : x) s += std::abs(v);
  return s;
}

const KernelTable* avx2() { return avx2_available() ? detail::avx2_table() : nullptr; }

}  // namespace

TEST_CASE("environment pin selects the scalar backend") {
  const char* env = std::getenv("KINETIC_SIMD");
  if (env != nullptr && std::strcmp(env, "scalar") == 0) CHECK(active_backend() == Backend::Scalar);
  else if (avx2_available()) CHECK(active_backend() == Backend::Avx2);
  MESSAGE("active backend: " << std::string(backend_name(active_backend())));
}

TEST_CASE("force_backend switches the dispatched table") {
  const Backend before = active_backend();
  force_backend(Backend::Scalar);
  CHECK(&kernels() == &detail::scalar_table());
  force_backend(Backend::Avx2);
  if (avx2_available()) CHECK(&kernels() == detail::avx2_table());
  else CHECK(&kernels() == &detail::scalar_table());
  force_backend(before);
}

TEST_SUITE("scalar and AVX2 kernels agree") {
  TEST_CASE("exp within a few ulp, underflow flushed") {
    const KernelTable* v = avx2();
    if (!v) return;
    const KernelTable& s = detail::scalar_table();
    for (std::size_t n : kLengths) {
      std::vector<double> x = random_vector(n, 11 + n, -720.0, 700.0);
      if (n > 3) {
        x[0] = -708.5;
        x[1] = 0.0;
        x[2] = -1e-300;
      }
      std::vector<double> a(n), b(n);
      s.exp(x.data(), a.data(), n);
      v->exp(x.data(), b.data(), n);
      for (std::size_t i = 0; i < n; ++i) {
        if (x[i] < -708.0) {
          CHECK(a[i] == 0.0);
          CHECK(b[i] == 0.0);
        } else {
          CHECK(std::abs(b[i] - a[i]) <= 4.0 * std::numeric_limits<double>::epsilon() * a[i]);
        }
      }
    }
  }

  TEST_CASE("pairwise sum within the rounding bound") {
    const KernelTable* v = avx2();
    if (!v) return;
    for (std::size_t n : kLengths) {
      const std::vector<double> x = random_vector(n, 3 * n + 1, -1.0, 1.0);
      const double a = detail::scalar_table().sum(x.data(), n);
      const double b = v->sum(x.data(), n);
      const double bound = 2.0 * std::log2(double(n) + 2.0) * std::numeric_limits<double>::epsilon() * abs_sum(x);
      CHECK(std::abs(a - b) <= bound);
    }
  }

  TEST_CASE("contract within one rounding per term") {
    const KernelTable* v = avx2();
    if (!v) return;
    for (std::size_t n : kLengths) {
      const int terms = 6;
      std::vector<std::vector<double>> A, B;
      std::vector<const double*> pa, pb;
      std::vector<double> coef;
      for (int t = 0; t < terms; ++t) {
        A.push_back(random_vector(n, 100 + t, -2.0, 2.0));
        B.push_back(random_vector(n, 200 + t, -2.0, 2.0));
        coef.push_back(0.5 + t);
      }
      for (int t = 0; t < terms; ++t) {
        pa.push_back(A[t].data());
        pb.push_back(B[t].data());
      }
      std::vector<double> a(n), b(n);
      detail::scalar_table().contract(pa.data(), pb.data(), coef.data(), terms, n, a.data());
      v->contract(pa.data(), pb.data(), coef.data(), terms, n, b.data());
      for (std::size_t i = 0; i < n; ++i) {
        double mag = 0.0;
        for (int t = 0; t < terms; ++t) mag += std::abs(coef[t] * A[t][i] * B[t][i]);
        CHECK(std::abs(a[i] - b[i]) <= 2.0 * terms * std::numeric_limits<double>::epsilon() * mag);
      }
    }
  }

  TEST_CASE("axpy_min outputs and minimum") {
    const KernelTable* v = avx2();
    if (!v) return;
    for (std::size_t n : kLengths) {
      const std::vector<double> x = random_vector(n, 7 * n, -1.0, 1.0), y = random_vector(n, 9 * n, -1.0, 1.0);
      std::vector<double> a(n), b(n);
      const double ma = detail::scalar_table().axpy_min(0.37, x.data(), y.data(), a.data(), n);
      const double mb = v->axpy_min(0.37, x.data(), y.data(), b.data(), n);
      const double eps = 2.0 * std::numeric_limits<double>::epsilon();
      for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(a[i] - b[i]) <= eps * (std::abs(y[i]) + 0.37 * std::abs(x[i])));
      if (n == 0) {
        CHECK(ma == std::numeric_limits<double>::infinity());
        CHECK(mb == std::numeric_limits<double>::infinity());
      } else {
        CHECK(std::abs(ma - mb) <= eps * 2.0);
      }
    }
  }

  TEST_CASE("weighted_max value and first index are identical") {
    const KernelTable* v = avx2();
    if (!v) return;
    for (std::size_t n : kLengths) {
      if (n == 0) continue;
      const std::vector<double> w = random_vector(n, 5 * n, 0.0, 2.0);
      std::vector<double> f = random_vector(n, 13 * n, 0.0, 1.0);
      const MaxIndex a = detail::scalar_table().weighted_max(w.data(), f.data(), n);
      const MaxIndex b = v->weighted_max(w.data(), f.data(), n);
      CHECK(a.value == b.value);
      CHECK(a.index == b.index);
      // Ties resolve to the first index.
      std::vector<double> ones(n, 1.0), flat(n, 0.25);
      CHECK(v->weighted_max(ones.data(), flat.data(), n).index == 0);
      CHECK(detail::scalar_table().weighted_max(ones.data(), flat.data(), n).index == 0);
    }
  }

  TEST_CASE("row moments and complex scaling") {
    const KernelTable* v = avx2();
    if (!v) return;
    for (std::size_t n : kLengths) {
      const std::vector<double> f = random_vector(n, 17 * n, 0.0, 1.0), x = random_vector(n, 19 * n, -3.0, 3.0);
      const RowMoments a = detail::scalar_table().row_moments(f.data(), x.data(), n);
      const RowMoments b = v->row_moments(f.data(), x.data(), n);
      const double eps = 4.0 * double(n + 1) * std::numeric_limits<double>::epsilon();
      double m1 = 0.0, m2 = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        m1 += std::abs(f[i] * x[i]);
        m2 += f[i] * x[i] * x[i];
      }
      CHECK(std::abs(a.s0 - b.s0) <= eps * a.s0);
      CHECK(std::abs(a.s1 - b.s1) <= eps * m1);
      CHECK(std::abs(a.s2 - b.s2) <= eps * m2);

      const std::vector<double> c = random_vector(2 * n, 23 * n, -1.0, 1.0);
      std::vector<double> ca(2 * n), cb(2 * n);
      detail::scalar_table().scale_complex(c.data(), f.data(), ca.data(), n);
      v->scale_complex(c.data(), f.data(), cb.data(), n);
      CHECK(ca == cb);
    }
  }
}

TEST_CASE("weighted sup-norm is backend independent") {
  const VelocityField f = gaussian_field(3, 1.2, Vec3{0.5, -0.3, 0.2}, Vec3{0.9, 1.1, 1.0});
  const QuadratureScheme q;
  const Backend before = active_backend();
  force_backend(Backend::Scalar);
  const SupNorm a = weighted_sup_norm(f, 4.0, q);
  force_backend(Backend::Avx2);
  const SupNorm b = weighted_sup_norm(f, 4.0, q);
  force_backend(before);
  CHECK(b.value == doctest::Approx(a.value).epsilon(1e-14));
  CHECK(norm(a.argmax - b.argmax) <= 1e-12);
}

TEST_CASE("solver steps and grid moments are backend independent") {
  const GridField g = GridField::sample(gaussian_field(3, 1.0, Vec3{}, Vec3{1.0, 0.95, 0.95}), 32, 6.85);
  const KernelSpec k = KernelSpec::landau(3, -3.0);
  HomogOptions opt;
  opt.max_steps = 3;
  const Backend before = active_backend();
  force_backend(Backend::Scalar);
  const Moments ma = grid_moments(g);
  const RunLog a = homog_run(g, k, QuadratureScheme{}, 1e9, 0.3, opt);
  force_backend(Backend::Avx2);
  const Moments mb = grid_moments(g);
  const RunLog b = homog_run(g, k, QuadratureScheme{}, 1e9, 0.3, opt);
  force_backend(before);
  CHECK(mb.mass == doctest::Approx(ma.mass).epsilon(1e-14));
  CHECK(mb.energy == doctest::Approx(ma.energy).epsilon(1e-14));
  REQUIRE(a.records.size() == b.records.size());
  double peak = 0.0, diff = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    peak = std::max(peak, a.final_state->values[i]);
    diff = std::max(diff, std::abs(a.final_state->values[i] - b.final_state->values[i]));
  }
  CHECK(diff <= 1e-13 * peak);
  for (std::size_t i = 0; i < a.records.size(); ++i)
    CHECK(b.records[i].norm_m == doctest::Approx(a.records[i].norm_m).epsilon(1e-13));
}
