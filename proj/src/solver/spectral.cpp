// Landau coefficients on a periodic grid by truncated-kernel convolution.
//
// The kernel K(z) = |z|^{2+gamma} Pi(z) is cut at |z| = L (at least the box
// diameter), transformed analytically, and sampled back to real space on a grid
// four times the box so the cut-off sphere is never aliased. The resulting
// band-limited kernel is restricted to offsets in [-n, n) and applied by FFT on
// a doubled grid, which is an exact aperiodic convolution for box data.

#include <fftw3.h>
#include <gsl/gsl_sf_bessel.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <complex>
#include <map>
#include <mutex>
#include <numbers>

#include "kinetic/errors.hpp"
#include "kinetic/parallel.hpp"
#include "kinetic/simd.hpp"
#include "kinetic/solver.hpp"

namespace kinetic {
namespace {

// FFTW planning is not thread-safe.
std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}

struct RealBuf {
  double* p = nullptr;
  explicit RealBuf(std::size_t n) : p(fftw_alloc_real(n)) {
    if (!p) throw std::bad_alloc();
  }
  ~RealBuf() { fftw_free(p); }
  RealBuf(const RealBuf&) = delete;
  RealBuf& operator=(const RealBuf&) = delete;
};

struct ComplexBuf {
  fftw_complex* p = nullptr;
  explicit ComplexBuf(std::size_t n) : p(fftw_alloc_complex(n)) {
    if (!p) throw std::bad_alloc();
  }
  ~ComplexBuf() { fftw_free(p); }
  ComplexBuf(const ComplexBuf&) = delete;
  ComplexBuf& operator=(const ComplexBuf&) = delete;
};

struct Plan {
  fftw_plan p = nullptr;
  ~Plan() {
    if (p) {
      std::lock_guard lock(plan_mutex());
      fftw_destroy_plan(p);
    }
  }
};

std::size_t ipow(int n, int d) {
  std::size_t r = 1;
  for (int i = 0; i < d; ++i) r *= static_cast<std::size_t>(n);
  return r;
}

// Sizes of the real and half-complex arrays for an n^d transform.
std::size_t real_size(int n, int d) { return ipow(n, d); }
std::size_t spec_size(int n, int d) { return ipow(n, d - 1) * static_cast<std::size_t>(n / 2 + 1); }

void make_plans(int n, int d, double* r, fftw_complex* c, Plan& fwd, Plan& bwd) {
  const int dims[3] = {n, n, n};
  std::lock_guard lock(plan_mutex());
  fwd.p = fftw_plan_dft_r2c(d, dims, r, c, FFTW_ESTIMATE);
  bwd.p = fftw_plan_dft_c2r(d, dims, c, r, FFTW_ESTIMATE);
  if (!fwd.p || !bwd.p) throw Error(ErrorKind::Evaluation, "FFTW planning failed");
}

// Signed integer frequency of index j on an n-point axis.
inline int freq(int j, int n) { return j <= n / 2 ? j : j - n; }

// Visit every half-complex index with its integer wave vector.
template <class Fn>
void for_each_mode(int n, int d, Fn&& fn) {
  const int last = n / 2 + 1;
  std::size_t idx = 0;
  if (d == 2) {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < last; ++b) fn(idx++, std::array<int, 3>{freq(a, n), b, 0});
  } else {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < last; ++c) fn(idx++, std::array<int, 3>{freq(a, n), freq(b, n), c});
  }
}

// int_0^L r^p g(k r) dr with g one of the radial profiles below.
enum class Profile { j0, j1_over_x, J0, J1_over_x };

double profile(Profile g, double x) {
  switch (g) {
    case Profile::j0:
      return x < 1e-4 ? 1.0 - x * x / 6.0 : std::sin(x) / x;
    case Profile::j1_over_x:
      return x < 1e-2 ? 1.0 / 3.0 - x * x / 30.0 + x * x * x * x / 840.0 : gsl_sf_bessel_j1(x) / x;
    case Profile::J0:
      return gsl_sf_bessel_J0(x);
    case Profile::J1_over_x:
      return x < 1e-4 ? 0.5 - x * x / 16.0 : gsl_sf_bessel_J1(x) / x;
  }
  return 0.0;
}

double radial_integral(double p, Profile g, double k, double L) {
  if (k == 0.0) return profile(g, 0.0) * std::pow(L, p + 1.0) / (p + 1.0);
  const double panel = std::min(L, std::numbers::pi / k);
  // First panel carries the r^p endpoint behaviour.
  const Rule1D& jac = gauss_jacobi_unit(16, p);
  double s = 0.0;
  const double scale = std::pow(panel, p + 1.0);
  for (std::size_t i = 0; i < jac.x.size(); ++i) s += scale * jac.w[i] * profile(g, k * panel * jac.x[i]);
  const int rest = static_cast<int>(std::ceil((L - panel) / panel - 1e-12));
  if (rest > 0) {
    const double w = (L - panel) / rest;
    const Rule1D& gl = gauss_legendre_unit(12);
    for (int q = 0; q < rest; ++q)
      for (std::size_t i = 0; i < gl.x.size(); ++i) {
        const double r = panel + w * (q + gl.x[i]);
        s += w * gl.w[i] * std::pow(r, p) * profile(g, k * r);
      }
  }
  return s;
}

}  // namespace

KernelTransform truncated_kernel_transform(int d, double gamma, double L, double k, bool closed_form) {
  KernelTransform t;
  const double pi = std::numbers::pi;
  if (d == 3 && gamma == -3.0 && closed_form) {
    // Pi(z)/|z| = D^2 |z|: A = 4 pi (sinc - cos)/k^2, A + B = 8 pi (1 - sinc)/k^2.
    const double x = k * L;
    if (x < 1e-2) {
      t.A = 4.0 * pi * L * L * (1.0 / 3.0 - x * x / 30.0);
      const double s = 8.0 * pi * L * L * (1.0 / 6.0 - x * x / 120.0);
      t.B = s - t.A;
    } else {
      const double sinc = std::sin(x) / x, c = std::cos(x);
      t.A = 4.0 * pi * (sinc - c) / (k * k);
      t.B = 8.0 * pi * (1.0 - sinc) / (k * k) - t.A;
    }
    return t;
  }
  if (d == 3) {
    const double tr = 8.0 * pi * radial_integral(4.0 + gamma, Profile::j0, k, L);
    const double s = 8.0 * pi * radial_integral(4.0 + gamma, Profile::j1_over_x, k, L);
    t.A = 0.5 * (tr - s);
    t.B = s - t.A;
    if (gamma > -3.0) t.C = 2.0 * (3.0 + gamma) * 4.0 * pi * radial_integral(2.0 + gamma, Profile::j0, k, L);
  } else {
    const double tr = 2.0 * pi * radial_integral(3.0 + gamma, Profile::J0, k, L);
    const double s = 2.0 * pi * radial_integral(3.0 + gamma, Profile::J1_over_x, k, L);
    t.A = tr - s;
    t.B = 2.0 * s - tr;
    t.C = (2.0 + gamma) * 2.0 * pi * radial_integral(1.0 + gamma, Profile::J0, k, L);
  }
  return t;
}

struct LandauSpectral::Impl {
  int d, n, M;
  double V, h;
  bool coulomb;
  std::vector<std::array<int, 2>> comps;
  std::vector<std::vector<std::complex<double>>> kspec;  // per component, on the M grid
  std::vector<std::complex<double>> cspec;               // c_bar kernel (non-Coulomb)
  std::vector<std::vector<double>> hess;                 // per component -k_a k_b / N on the n grid

  RealBuf pad, small;
  ComplexBuf pad_spec, small_spec;
  Plan pad_fwd, pad_bwd, small_fwd, small_bwd;

  Impl(int d_, int n_, double V_, bool coul)
      : d(d_),
        n(n_),
        M(2 * n_),
        V(V_),
        h(2.0 * V_ / n_),
        coulomb(coul),
        pad(real_size(2 * n_, d_)),
        small(real_size(n_, d_)),
        pad_spec(spec_size(2 * n_, d_)),
        small_spec(spec_size(n_, d_)) {
    make_plans(M, d, pad.p, pad_spec.p, pad_fwd, pad_bwd);
    make_plans(n, d, small.p, small_spec.p, small_fwd, small_bwd);
  }
};

LandauSpectral::LandauSpectral(int d, int n, double V, const KernelSpec& k) : dim_(d) {
  if (k.op() != Operator::Landau) throw CapabilityError("the homogeneous solver supports Landau kernels only");
  if (k.dim() != d) throw ArgumentError("kernel and grid dimensions differ");
  if (n < 4 || n % 2) throw ArgumentError("grid size must be even and at least 4");
  const bool coulomb = d == 3 && k.gamma() == -3.0;
  impl_ = std::make_unique<Impl>(d, n, V, coulomb);
  Impl& I = *impl_;
  if (d == 3)
    I.comps = {{0, 0}, {1, 1}, {2, 2}, {0, 1}, {0, 2}, {1, 2}};
  else
    I.comps = {{0, 0}, {1, 1}, {0, 1}};

  const double L = 2.0 * std::sqrt(static_cast<double>(d)) * V;
  const int P = 4 * n;
  const double dkP = 2.0 * std::numbers::pi / (P * I.h);

  // Radial transforms depend on |j|^2 only.
  std::map<long, KernelTransform> table;
  auto transform = [&](const std::array<int, 3>& j) -> const KernelTransform& {
    const long key = long(j[0]) * j[0] + long(j[1]) * j[1] + long(j[2]) * j[2];
    auto it = table.find(key);
    if (it == table.end())
      it = table.emplace(key, truncated_kernel_transform(d, k.gamma(), L, dkP * std::sqrt(double(key)))).first;
    return it->second;
  };
  for_each_mode(P, d, [&](std::size_t, const std::array<int, 3>& j) { transform(j); });

  RealBuf big(real_size(P, d));
  ComplexBuf big_spec(spec_size(P, d));
  Plan big_fwd, big_bwd;
  make_plans(P, d, big.p, big_spec.p, big_fwd, big_bwd);

  const double norm_big = std::pow(P * I.h, d);  // continuous inverse transform normalization
  const double cell = std::pow(I.h, d);
  const std::size_t Mreal = real_size(I.M, d), Mspec = spec_size(I.M, d);

  // Sample the band-limited kernel on the P grid, keep offsets [-n, n) on the M grid,
  // and transform it there. Returns the M-grid spectrum scaled for the c2r step.
  auto build = [&](auto&& hat) {
    for_each_mode(P, d, [&](std::size_t idx, const std::array<int, 3>& j) {
      big_spec.p[idx][0] = hat(j, transform(j));
      big_spec.p[idx][1] = 0.0;
    });
    fftw_execute(big_bwd.p);
    for (std::size_t i = 0; i < Mreal; ++i) {
      std::size_t rem = i, src = 0, stride = 1;
      for (int a = d - 1; a >= 0; --a) {
        const int m = static_cast<int>(rem % I.M);
        rem /= I.M;
        const int off = m < n ? m : m - I.M;
        src += stride * static_cast<std::size_t>((off + P) % P);
        stride *= P;
      }
      I.pad.p[i] = big.p[src] / norm_big * cell;
    }
    fftw_execute(I.pad_fwd.p);
    std::vector<std::complex<double>> out(Mspec);
    const double inv = 1.0 / static_cast<double>(Mreal);
    for (std::size_t i = 0; i < Mspec; ++i) out[i] = {I.pad_spec.p[i][0] * inv, I.pad_spec.p[i][1] * inv};
    return out;
  };

  for (const auto& [a, b] : I.comps) {
    I.kspec.push_back(build([a = a, b = b, P](const std::array<int, 3>& j, const KernelTransform& t) {
      const double k2 = double(j[0]) * j[0] + double(j[1]) * j[1] + double(j[2]) * j[2];
      const bool nyquist = a != b && (std::abs(j[a]) == P / 2 || std::abs(j[b]) == P / 2);
      const double kk = k2 > 0.0 && !nyquist ? j[a] * j[b] / k2 : 0.0;
      return (a == b ? t.A : 0.0) + t.B * kk;
    }));
  }
  if (!coulomb) I.cspec = build([](const std::array<int, 3>&, const KernelTransform& t) { return t.C; });
}

LandauSpectral::~LandauSpectral() = default;

std::array<int, 2> LandauSpectral::component(int c) const { return impl_->comps.at(c); }

void LandauSpectral::coefficients(const std::vector<double>& f, std::vector<std::vector<double>>& a,
                                  std::vector<double>& cbar) {
  Impl& I = *impl_;
  const int d = I.d, n = I.n, M = I.M;
  if (f.size() != real_size(n, d)) throw ArgumentError("field size does not match the grid");
  const std::size_t Mreal = real_size(M, d), Mspec = spec_size(M, d);
  std::fill(I.pad.p, I.pad.p + Mreal, 0.0);
  for (std::size_t i = 0; i < f.size(); ++i) {
    std::size_t rem = i, dst = 0, stride = 1;
    for (int ax = 0; ax < d; ++ax) {
      dst += stride * (rem % n);
      rem /= n;
      stride *= M;
    }
    I.pad.p[dst] = f[i];
  }
  fftw_execute(I.pad_fwd.p);
  std::vector<std::complex<double>> fspec(Mspec);
  for (std::size_t i = 0; i < Mspec; ++i) fspec[i] = {I.pad_spec.p[i][0], I.pad_spec.p[i][1]};

  const int nc = components() + (I.coulomb ? 0 : 1);
  a.assign(components(), std::vector<double>(f.size()));
  cbar.assign(f.size(), 0.0);
  for_each_chunk(static_cast<std::size_t>(nc), 1, [&](std::size_t c, std::size_t, std::size_t) {
    ComplexBuf spec(Mspec);
    RealBuf out(Mreal);
    const auto& K = c < static_cast<std::size_t>(components()) ? I.kspec[c] : I.cspec;
    for (std::size_t i = 0; i < Mspec; ++i) {
      const std::complex<double> z = fspec[i] * K[i];
      spec.p[i][0] = z.real();
      spec.p[i][1] = z.imag();
    }
    fftw_execute_dft_c2r(I.pad_bwd.p, spec.p, out.p);
    std::vector<double>& dst = c < static_cast<std::size_t>(components()) ? a[c] : cbar;
    for (std::size_t i = 0; i < f.size(); ++i) {
      std::size_t rem = i, src = 0, stride = 1;
      for (int ax = 0; ax < d; ++ax) {
        src += stride * (rem % n);
        rem /= n;
        stride *= M;
      }
      dst[i] = out.p[src];
    }
  });
  if (I.coulomb)
    for (std::size_t i = 0; i < f.size(); ++i) cbar[i] = 8.0 * std::numbers::pi * f[i];
}

void LandauSpectral::hessian(const std::vector<double>& f, std::vector<std::vector<double>>& d2f) {
  Impl& I = *impl_;
  const int d = I.d, n = I.n;
  const std::size_t N = real_size(n, d), S = spec_size(n, d);
  if (f.size() != N) throw ArgumentError("field size does not match the grid");
  if (I.hess.empty()) {
    const double dk = 2.0 * std::numbers::pi / (n * I.h);
    I.hess.assign(components(), std::vector<double>(S));
    for_each_mode(n, d, [&](std::size_t idx, const std::array<int, 3>& j) {
      for (int c = 0; c < components(); ++c) {
        const auto [a, b] = I.comps[c];
        // Odd derivatives of the Nyquist mode are not representable.
        double mult = -(dk * j[a]) * (dk * j[b]);
        if (a != b && (std::abs(j[a]) == n / 2 || std::abs(j[b]) == n / 2)) mult = 0.0;
        I.hess[c][idx] = mult / static_cast<double>(N);
      }
    });
  }
  std::copy(f.begin(), f.end(), I.small.p);
  fftw_execute(I.small_fwd.p);

  d2f.assign(components(), std::vector<double>(N));
  for_each_chunk(static_cast<std::size_t>(components()), 1, [&](std::size_t c, std::size_t, std::size_t) {
    ComplexBuf spec(S);
    RealBuf out(N);
    simd::kernels().scale_complex(&I.small_spec.p[0][0], I.hess[c].data(), &spec.p[0][0], S);
    fftw_execute_dft_c2r(I.small_bwd.p, spec.p, out.p);
    std::copy(out.p, out.p + N, d2f[c].begin());
  });
}

}  // namespace kinetic
