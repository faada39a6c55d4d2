#include "kinetic/barrier.hpp"

#include <cmath>

#include "kinetic/errors.hpp"

namespace kinetic {

Barrier::Barrier(double m, double alpha, int dim) : m_(m), alpha_(alpha), dim_(dim) {
  const double k = 0.5 * m;
  double binom = 1.0;  // C(k + j - 1, j)
  for (int j = 0; j < 6; ++j) {
    if (j > 0) binom *= (k + j - 1) / j;
    c_[j] = (j % 2 == 0 ? 1.0 : -1.0) * binom * std::pow(4.0, k + j);
  }
}

void Barrier::inner(double s, double& p, double& dp, double& d2p) const {
  const double x = s - 0.25;
  p = dp = d2p = 0.0;
  for (int j = 5; j >= 0; --j) {
    d2p = d2p * x + 2.0 * dp;
    dp = dp * x + p;
    p = p * x + c_[j];
  }
}

double Barrier::profile(double r) const {
  if (r >= 0.5) return std::pow(r, -m_);
  double p, dp, d2p;
  inner(r * r, p, dp, d2p);
  return p;
}

double Barrier::value(const Vec3& v) const { return alpha_ * profile(norm(v)); }

Vec3 Barrier::gradient(const Vec3& v) const {
  const double s = norm2(v);
  if (s >= 0.25) return (-alpha_ * m_ * std::pow(s, -0.5 * m_ - 1.0)) * v;
  double p, dp, d2p;
  inner(s, p, dp, d2p);
  return (2.0 * alpha_ * dp) * v;
}

Mat3 Barrier::hessian(const Vec3& v) const {
  const double s = norm2(v);
  Mat3 H;
  if (s >= 0.25) {
    // m |v|^{-m-2} [(m+2) v v^T / |v|^2 - Id]
    const double scale = alpha_ * m_ * std::pow(s, -0.5 * m_ - 1.0);
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j) H(i, j) = scale * ((m_ + 2.0) * v[i] * v[j] / s - (i == j ? 1.0 : 0.0));
    return H;
  }
  double p, dp, d2p;
  inner(s, p, dp, d2p);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) H(i, j) = alpha_ * (4.0 * d2p * v[i] * v[j] + (i == j ? 2.0 * dp : 0.0));
  return H;
}

VelocityField Barrier::as_field() const {
  const double k = 0.5 * m_;
  const double amp = alpha_ * std::max(std::pow(5.0, k), std::pow(1.25, k) * profile(0.0));
  Barrier self = *this;
  VelocityField f(dim_, [self](const Vec3& v) { return self.value(v); }, DecayInfo{m_, amp, std::nullopt});
  f.with_gradient([self](const Vec3& v) { return self.gradient(v); });
  f.with_hessian([self](const Vec3& v) { return self.hessian(v); });
  return f;
}

Barrier make_barrier(double m, double alpha, int dim) {
  if (!(m > 0.0)) throw ArgumentError("barrier exponent m must be positive");
  if (!(alpha > 0.0)) throw ArgumentError("barrier amplitude alpha must be positive");
  if (dim != 2 && dim != 3) throw ArgumentError("barrier dimension must be 2 or 3");
  Barrier b(m, alpha, dim);

  // Sampled verification of the profile guarantees.
  const int n = 2000;
  double prev = b.profile(0.0);
  if (!(prev > 0.0) || !std::isfinite(prev)) throw Error(ErrorKind::Configuration, "barrier profile not positive at 0");
  for (int i = 1; i <= n; ++i) {
    const double r = 0.5 * i / n;
    const double p = b.profile(r);
    if (p > prev * (1.0 + 1e-14)) throw Error(ErrorKind::Configuration, "barrier profile not monotone");
    if (p > std::pow(r, -m) * (1.0 + 1e-13)) throw Error(ErrorKind::Configuration, "barrier profile exceeds |v|^-m");
    prev = p;
  }
  double p, dp, d2p;
  b.inner(0.25, p, dp, d2p);
  const double r = 0.5;
  const double d2_inner = 2.0 * dp + 4.0 * r * r * d2p;
  const double d2_outer = m * (m + 1.0) * std::pow(r, -m - 2.0);
  if (std::abs(d2_inner - d2_outer) > 1e-10 * d2_outer)
    throw Error(ErrorKind::Configuration, "barrier profile not C2 at |v| = 1/2");
  return b;
}

BarrierValue barrier_eval(const Barrier& b, const Vec3& v, BarrierOrder order) {
  switch (order) {
    case BarrierOrder::Value: return b.value(v);
    case BarrierOrder::Gradient: return b.gradient(v);
    case BarrierOrder::Hessian: return b.hessian(v);
  }
  throw ArgumentError("unknown barrier order");
}

}  // namespace kinetic
