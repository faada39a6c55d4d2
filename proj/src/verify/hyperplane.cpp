// Hyperplane form of the Boltzmann contact inequality at the scaled contact point.
//
// Points of the hyperplane are z = e + rho u with u a unit vector orthogonal to
// e - w, so r^2 = |z - w|^2 = D^2 + rho^2 with D = |e - w| and
// |z|^2 = 1 + 2 rho (e.u) + rho^2. The bracket A - B vanishes at rho = 0; it is
// evaluated as B expm1(L) with
//   L = -(m/2) log1p(2 rho e.u + rho^2) + ((d+gamma)/2) log1p(rho^2 / D^2).
// Past rho_c the radial variable is inverted (rho = rho_c / t) and each term gets
// a Jacobi rule matching its algebraic decay.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "kinetic/errors.hpp"
#include "kinetic/verify.hpp"

namespace kinetic {
namespace {

constexpr double kTailStart = 16.0;
constexpr double kMaxJacobiExponent = 60.0;

struct Directions {
  std::vector<double> edotu, w;
};

Directions hyperplane_directions(int d, const Vec3& normal, int n) {
  Directions out;
  if (d == 3) {
    Vec3 t1, t2;
    orthonormal_complement(normal, t1, t2);
    const double dphi = std::numbers::pi / n;
    for (int k = 0; k < 2 * n; ++k) {
      const double phi = (k + 0.5) * dphi;
      out.edotu.push_back((std::cos(phi) * t1 + std::sin(phi) * t2).x);
      out.w.push_back(dphi);
    }
  } else {
    const Vec3 t = perpendicular_2d(normal);
    out.edotu = {t.x, -t.x};
    out.w = {1.0, 1.0};
  }
  return out;
}

// Rule on (0, 1] for t^beta times a smooth function; weights include t^{-beta}.
void tail_rule(double beta, int n, std::vector<double>& t, std::vector<double>& w) {
  t.clear();
  w.clear();
  if (beta > kMaxJacobiExponent || std::abs(beta) < 1e-14) beta = 0.0;
  const Rule1D& r = gauss_jacobi_unit(n, beta);
  for (std::size_t i = 0; i < r.x.size(); ++i) {
    t.push_back(r.x[i]);
    w.push_back(r.w[i] / std::pow(r.x[i], beta));
  }
}

}  // namespace

double boltzmann_hyperplane_integral(double m, const Vec3& w, const KernelSpec& k, const QuadratureScheme& q) {
  if (k.op() != Operator::Boltzmann) throw ArgumentError("kernel is not a Boltzmann kernel");
  if (!(norm(w) < 0.5)) throw DomainError("hyperplane integral needs |w| < 1/2");
  if (!(m > 0.0)) throw ArgumentError("m must be positive");
  q.validate();
  const int d = k.dim();
  const double g = k.gamma();
  const double pb = k.angular().grazing_exponent;
  // The far-field term |z|^{-m} r^{2-d+gamma} b(D/r) decays like rho^{-m+gamma+pb}.
  if (!(m > g + pb + 1.0)) return std::numeric_limits<double>::infinity();

  const Vec3 e{1.0, 0.0, 0.0};
  const Vec3 ew = e - w;
  const double D = norm(ew);
  const Directions dirs = hyperplane_directions(d, (1.0 / D) * ew, q.angular_nodes);
  const double log_D = std::log(D);

  // Near-field: rho in [0, rho_c].
  const double beta0 = k.cutoff() ? (d - 2) - pb : d - pb;
  std::vector<double> rho, wr;
  radial_panels(kTailStart, std::min(0.25, 0.25 * D), beta0, q.panel_width, q.hyperplane_nodes, rho, wr);
  std::vector<double> terms;
  terms.reserve(rho.size());
  for (std::size_t i = 0; i < rho.size(); ++i) {
    const double p = rho[i];
    const double r2 = D * D + p * p;
    const double r = std::sqrt(r2);
    const double logB = (g + d) * log_D - (d - 1) * std::log(r2);
    const double bx = k.b(p / r), bD = k.b(D / r);
    const double lr = 0.5 * (d + g) * std::log1p(p * p / (D * D));
    double s = 0.0;
    for (std::size_t j = 0; j < dirs.w.size(); ++j) {
      const double lz = std::log1p(2.0 * p * dirs.edotu[j] + p * p);
      const double L = -0.5 * m * lz + lr;
      const double logA = -0.5 * m * lz + 0.5 * (2 - d + g) * std::log(r2);
      s += dirs.w[j] * (std::exp(logB) * std::expm1(L) * bx + std::exp(logA) * bD);
    }
    terms.push_back(wr[i] * std::pow(p, d - 2) * s);
  }

  // Far-field: rho = rho_c / t, d rho = rho_c / t^2 dt; three separately graded terms.
  const int nt = 2 * q.hyperplane_nodes;
  std::vector<double> t, wt;
  auto tail = [&](double beta, int which) {
    tail_rule(beta, nt, t, wt);
    for (std::size_t i = 0; i < t.size(); ++i) {
      const double p = kTailStart / t[i];
      const double r2 = D * D + p * p;
      const double r = std::sqrt(r2);
      const double jac = kTailStart / (t[i] * t[i]) * std::pow(p, d - 2);
      double s = 0.0;
      for (std::size_t j = 0; j < dirs.w.size(); ++j) {
        const double z2 = 1.0 + 2.0 * p * dirs.edotu[j] + p * p;
        const double A = std::exp(-0.5 * m * std::log(z2) + 0.5 * (2 - d + g) * std::log(r2));
        if (which == 0) s -= dirs.w[j] * std::exp((g + d) * log_D - (d - 1) * std::log(r2)) * k.b(p / r);
        if (which == 1) s += dirs.w[j] * A * k.b(p / r);
        if (which == 2) s += dirs.w[j] * A * k.b(D / r);
      }
      terms.push_back(wt[i] * jac * s);
    }
  };
  tail(d - 2.0, 0);
  tail(m - g - 2.0, 1);
  tail(m - g - pb - 2.0, 2);

  double sum = 0.0, comp = 0.0;  // Neumaier summation; terms have mixed signs
  for (double x : terms) {
    const double y = sum + x;
    comp += std::abs(sum) >= std::abs(x) ? (sum - y) + x : (x - y) + sum;
    sum = y;
  }
  return sum + comp;
}

ThresholdReport boltzmann_m0_search(const KernelSpec& k, const QuadratureScheme& q, double ceiling) {
  if (k.op() != Operator::Boltzmann) throw ArgumentError("kernel is not a Boltzmann kernel");
  const double limit = std::max(0.0, k.gamma() + k.angular().grazing_exponent + 1.0);
  auto J = [&](double m) { return boltzmann_hyperplane_integral(m, Vec3{}, k, q); };

  ThresholdReport r;
  r.parameter = "m0";
  r.grid = {{"dim", double(k.dim())},
            {"gamma", k.gamma()},
            {"ceiling", ceiling},
            {"convergence_limit", limit},
            {"rel_tol", q.rel_tol},
            {"angular_nodes", double(q.angular_nodes)},
            {"hyperplane_nodes", double(q.hyperplane_nodes)}};

  double lo = limit + 1e-3;
  double jlo = J(lo);
  r.certificate.push_back({"J_at_lower_limit", lo, jlo});
  if (!(jlo >= 0.0)) return r;  // negative right at the convergence limit: no sign change to certify

  const double step = 0.25;
  double hi = lo, jhi = jlo;
  while (jhi >= 0.0) {
    lo = hi;
    jlo = jhi;
    hi = lo + step;
    if (hi > ceiling) {
      r.certificate.push_back({"J_at_ceiling", ceiling, J(ceiling)});
      return r;
    }
    jhi = J(hi);
  }
  while (hi - lo > q.rel_tol * hi) {
    const double mid = 0.5 * (lo + hi);
    const double jm = J(mid);
    if (jm < 0.0) {
      hi = mid;
      jhi = jm;
    } else {
      lo = mid;
      jlo = jm;
    }
  }
  r.value = hi;
  r.certificate.push_back({"J_nonnegative", lo, jlo});
  r.certificate.push_back({"J_negative", hi, jhi});
  return r;
}

ThresholdReport boltzmann_delta_search(double m, const KernelSpec& k, const QuadratureScheme& q) {
  if (k.op() != Operator::Boltzmann) throw ArgumentError("kernel is not a Boltzmann kernel");
  const double j0 = boltzmann_hyperplane_integral(m, Vec3{}, k, q);
  if (!(j0 < 0.0))
    throw InfeasibilityError("hyperplane integral is nonnegative at w = 0; m is below the threshold");

  constexpr int kAngles = 64;
  auto worst = [&](double radius, double* arg) {
    double best = -std::numeric_limits<double>::infinity();
    for (int j = 0; j < kAngles; ++j) {
      const double a = std::numbers::pi * j / (kAngles - 1);
      const double v = boltzmann_hyperplane_integral(m, Vec3{radius * std::cos(a), radius * std::sin(a), 0.0}, k, q);
      if (v > best) {
        best = v;
        if (arg) *arg = a;
      }
    }
    return best;
  };

  ThresholdReport r;
  r.parameter = "delta";
  r.grid = {{"m", m}, {"dim", double(k.dim())}, {"gamma", k.gamma()}, {"angles", double(kAngles)},
            {"rel_tol", q.rel_tol}};
  r.certificate.push_back({"J_at_origin", 0.0, j0});

  const double cap = 0.5 * (1.0 - 1e-6);
  constexpr int kScan = 16;
  double good = 0.0, bad = -1.0, wgood = j0, wbad = 0.0;
  for (int i = 1; i <= kScan; ++i) {
    const double radius = i < kScan ? 0.5 * i / kScan : cap;
    const double v = worst(radius, nullptr);
    if (v > 0.0) {
      bad = radius;
      wbad = v;
      break;
    }
    good = radius;
    wgood = v;
  }
  if (bad < 0.0) {
    r.value = good;
    r.certificate.push_back({"max_J_at_delta", good, wgood});
    return r;
  }
  while (bad - good > q.rel_tol * std::max(good, 1e-300) && bad - good > 1e-12) {
    const double mid = 0.5 * (good + bad);
    const double v = worst(mid, nullptr);
    if (v > 0.0) {
      bad = mid;
      wbad = v;
    } else {
      good = mid;
      wgood = v;
    }
  }
  r.value = good;
  r.certificate.push_back({"max_J_at_delta", good, wgood});
  r.certificate.push_back({"max_J_past_delta", bad, wbad});
  return r;
}

Vec3 stereographic_point(const Vec3& P, const Vec3& Q, const Vec3& z) {
  const Vec3 dz = z - Q;
  return Q + (norm2(P - Q) / norm2(dz)) * dz;
}

double stereographic_jacobian(const Vec3& P, const Vec3& Q, const Vec3& z, int d) {
  return std::pow(norm2(P - Q) / norm2(z - Q), d - 1);
}

}  // namespace kinetic
