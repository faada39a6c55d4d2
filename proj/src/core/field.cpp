#include "kinetic/field.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "kinetic/errors.hpp"
#include "kinetic/simd.hpp"

namespace kinetic {

VelocityField::VelocityField(int dim, EvalFn eval, DecayInfo decay)
    : dim_(dim), eval_(std::make_shared<const EvalFn>(std::move(eval))), decay_(decay) {
  if (dim != 2 && dim != 3) throw ArgumentError("velocity fields support d = 2 or 3, got " + std::to_string(dim));
  if (!(decay.amplitude >= 0.0)) throw ArgumentError("decay amplitude must be nonnegative");
}

VelocityField& VelocityField::with_gradient(GradFn g) { grad_ = std::move(g); return *this; }
VelocityField& VelocityField::with_hessian(HessFn h) { hess_ = std::move(h); return *this; }
VelocityField& VelocityField::with_batch(BatchFn b) { batch_ = std::move(b); return *this; }
VelocityField& VelocityField::non_differentiable() { differentiable_ = false; return *this; }

void VelocityField::eval_batch(std::span<const Vec3> v, std::span<double> out) const {
  if (batch_) {
    batch_(v, out);
    return;
  }
  const auto& f = *eval_;
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = f(v[i]);
}

double default_fd_step(const Vec3& v, double rel_tol) { return std::cbrt(rel_tol) * bracket(v); }

Vec3 VelocityField::gradient(const Vec3& v, double h, double rel_tol) const {
  if (grad_) return grad_(v);
  if (!differentiable_) throw CapabilityError("field has no gradient and is declared non-differentiable");
  if (h <= 0.0) h = default_fd_step(v, rel_tol);
  Vec3 g;
  for (int i = 0; i < dim_; ++i) {
    Vec3 e;
    e[i] = h;
    g[i] = ((*this)(v + e) - (*this)(v - e)) / (2.0 * h);
  }
  return g;
}

Mat3 VelocityField::hessian(const Vec3& v, double h, double rel_tol) const {
  if (hess_) return hess_(v);
  if (!differentiable_) throw CapabilityError("field has no second derivatives and is declared non-differentiable");
  if (h <= 0.0) h = default_fd_step(v, rel_tol);
  Mat3 H;
  const double f0 = (*this)(v);
  for (int i = 0; i < dim_; ++i) {
    Vec3 ei;
    ei[i] = h;
    H(i, i) = ((*this)(v + ei) - 2.0 * f0 + (*this)(v - ei)) / (h * h);
    for (int j = i + 1; j < dim_; ++j) {
      Vec3 ej;
      ej[j] = h;
      const double mixed =
          ((*this)(v + ei + ej) - (*this)(v + ei - ej) - (*this)(v - ei + ej) + (*this)(v - ei - ej)) / (4.0 * h * h);
      H(i, j) = H(j, i) = mixed;
    }
  }
  return H;
}

void VelocityField::validate(std::span<const Vec3> nodes) const {
  const double tol = 1e-12;
  for (const Vec3& v : nodes) {
    const double fv = (*this)(v);
    if (!std::isfinite(fv)) throw EvaluationError("non-finite field value at v = " + to_string(v));
    if (fv < 0.0) throw ConfigurationError("negative field value at v = " + to_string(v));
    const double weighted = fv * std::pow(bracket(v), decay_.exponent);
    if (weighted > decay_.amplitude * (1.0 + tol) + tol * 1e-300)
      throw ConfigurationError("declared decay bound violated at v = " + to_string(v));
    if (decay_.inner_void_radius && norm(v) < *decay_.inner_void_radius && fv != 0.0)
      throw ConfigurationError("field nonzero inside declared void at v = " + to_string(v));
  }
}

VelocityField zero_field(int d) {
  VelocityField f(d, [](const Vec3&) { return 0.0; }, DecayInfo{64.0, 0.0, std::nullopt});
  f.with_gradient([](const Vec3&) { return Vec3{}; }).with_hessian([](const Vec3&) { return Mat3{}; });
  return f;
}

namespace {

// Real roots of t^3 + a t^2 + b t + c.
std::vector<double> real_cubic_roots(double a, double b, double c) {
  const double p = b - a * a / 3.0;
  const double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
  const double shift = -a / 3.0;
  std::vector<double> roots;
  const double disc = q * q / 4.0 + p * p * p / 27.0;
  if (disc > 0.0) {
    const double s = std::sqrt(disc);
    roots.push_back(std::cbrt(-q / 2.0 + s) + std::cbrt(-q / 2.0 - s) + shift);
  } else if (p == 0.0) {
    roots.push_back(shift);
  } else {
    const double r = 2.0 * std::sqrt(-p / 3.0);
    const double arg = std::clamp(3.0 * q / (p * r), -1.0, 1.0);
    const double phi = std::acos(arg) / 3.0;
    for (int k = 0; k < 3; ++k) roots.push_back(r * std::cos(phi - 2.0 * std::numbers::pi * k / 3.0) + shift);
  }
  // Newton polish.
  for (double& t : roots) {
    for (int it = 0; it < 4; ++it) {
      const double f = ((t + a) * t + b) * t + c;
      const double fp = (3.0 * t + 2.0 * a) * t + b;
      if (fp == 0.0) break;
      t -= f / fp;
    }
  }
  return roots;
}

}  // namespace

double gaussian_bracket_sup(double u_norm, double theta, double k, double* arg) {
  // Critical points of (k/2) log(1+t^2) - (t-a)^2/(2 theta) solve
  // t^3 - a t^2 + (1 - k theta) t - a = 0.
  const double a = u_norm;
  double best = -std::numeric_limits<double>::infinity(), best_t = a;
  for (double t : real_cubic_roots(-a, 1.0 - k * theta, -a)) {
    const double g = 0.5 * k * std::log1p(t * t) - (t - a) * (t - a) / (2.0 * theta);
    if (g > best) {
      best = g;
      best_t = t;
    }
  }
  if (arg != nullptr) *arg = best_t;
  return std::exp(best);
}

VelocityField gaussian_field(int d, double rho, const Vec3& u, const Vec3& theta, double decay_exponent) {
  if (rho < 0.0) throw ArgumentError("Gaussian mass must be nonnegative");
  double det = 1.0, theta_max = 0.0;
  for (int i = 0; i < d; ++i) {
    if (!(theta[i] > 0.0)) throw ArgumentError("Gaussian temperatures must be positive");
    det *= theta[i];
    theta_max = std::max(theta_max, theta[i]);
  }
  const double pref = rho / (std::pow(2.0 * std::numbers::pi, 0.5 * d) * std::sqrt(det));
  Vec3 inv;
  for (int i = 0; i < d; ++i) inv[i] = 1.0 / (2.0 * theta[i]);
  Vec3 uu;
  for (int i = 0; i < d; ++i) uu[i] = u[i];

  auto eval = [=](const Vec3& v) {
    double s = 0.0;
    for (int i = 0; i < d; ++i) s += inv[i] * (v[i] - uu[i]) * (v[i] - uu[i]);
    return pref * std::exp(-s);
  };
  // Anisotropic data is dominated by the isotropic Gaussian at the largest temperature.
  const double amp = pref * gaussian_bracket_sup(norm(uu), theta_max, decay_exponent);
  VelocityField f(d, eval, DecayInfo{decay_exponent, amp, std::nullopt});
  f.with_gradient([=](const Vec3& v) {
    const double fv = eval(v);
    Vec3 g;
    for (int i = 0; i < d; ++i) g[i] = -2.0 * inv[i] * (v[i] - uu[i]) * fv;
    return g;
  });
  f.with_hessian([=](const Vec3& v) {
    const double fv = eval(v);
    Vec3 g;
    for (int i = 0; i < d; ++i) g[i] = -2.0 * inv[i] * (v[i] - uu[i]);
    Mat3 H;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) H(i, j) = fv * (g[i] * g[j] - (i == j ? 2.0 * inv[i] : 0.0));
    return H;
  });
  f.with_batch([=](std::span<const Vec3> v, std::span<double> out) {
    for (std::size_t k = 0; k < v.size(); ++k) {
      double s = 0.0;
      for (int i = 0; i < d; ++i) s += inv[i] * (v[k][i] - uu[i]) * (v[k][i] - uu[i]);
      out[k] = -s;
    }
    simd::kernels().exp(out.data(), out.data(), out.size());
    for (double& x : out) x *= pref;
  });
  return f;
}

VelocityField gaussian_field(int d, double rho, const Vec3& u, double theta, double decay_exponent) {
  return gaussian_field(d, rho, u, Vec3{theta, theta, theta}, decay_exponent);
}

VelocityField compact_bump(int d, const Vec3& center, double radius, double height, double decay_exponent) {
  if (!(radius > 0.0) || height < 0.0) throw ArgumentError("bump needs positive radius and nonnegative height");
  const double R2 = radius * radius;
  auto profile = [=](const Vec3& v, double& s) {
    s = norm2(v - center) / R2;
    return s < 1.0 ? height * std::exp(1.0 - 1.0 / (1.0 - s)) : 0.0;
  };
  DecayInfo decay{decay_exponent, height * std::pow(1.0 + std::pow(norm(center) + radius, 2), 0.5 * decay_exponent),
                  std::nullopt};
  if (norm(center) > radius) decay.inner_void_radius = norm(center) - radius;
  VelocityField f(d, [=](const Vec3& v) { double s; return profile(v, s); }, decay);
  f.with_gradient([=](const Vec3& v) {
    double s;
    const double g = profile(v, s);
    if (g == 0.0) return Vec3{};
    const double om = 1.0 - s;
    return (-g / (om * om) * 2.0 / R2) * (v - center);
  });
  f.with_hessian([=](const Vec3& v) {
    double s;
    const double g = profile(v, s);
    Mat3 H;
    if (g == 0.0) return H;
    const double om = 1.0 - s;
    const double g1 = -g / (om * om);
    const double g2 = g * (1.0 / std::pow(om, 4) - 2.0 / std::pow(om, 3));
    const Vec3 x = v - center;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) H(i, j) = g2 * 4.0 * x[i] * x[j] / (R2 * R2) + (i == j ? 2.0 * g1 / R2 : 0.0);
    return H;
  });
  return f;
}

VelocityField mixture(const std::vector<std::pair<double, VelocityField>>& terms) {
  if (terms.empty()) throw ArgumentError("mixture needs at least one term");
  const int d = terms.front().second.dim();
  double m = terms.front().second.decay().exponent, amp = 0.0;
  bool all_grad = true, all_hess = true, all_diff = true;
  for (const auto& [c, f] : terms) {
    if (c < 0.0) throw ArgumentError("mixture weights must be nonnegative");
    if (f.dim() != d) throw ArgumentError("mixture terms must share the dimension");
    m = std::min(m, f.decay().exponent);
    all_grad = all_grad && f.has_gradient();
    all_hess = all_hess && f.has_hessian();
    all_diff = all_diff && f.differentiable();
  }
  // <v>^m f_k <= A_k <v>^{m - m_k} <= A_k for every term.
  for (const auto& [c, f] : terms) amp += c * f.decay().amplitude;
  auto copy = terms;
  VelocityField out(d, [copy](const Vec3& v) {
    double s = 0.0;
    for (const auto& [c, f] : copy) s += c * f(v);
    return s;
  }, DecayInfo{m, amp, std::nullopt});
  if (all_grad)
    out.with_gradient([copy](const Vec3& v) {
      Vec3 g;
      for (const auto& [c, f] : copy) g += c * f.gradient(v);
      return g;
    });
  if (all_hess)
    out.with_hessian([copy](const Vec3& v) {
      Mat3 H;
      for (const auto& [c, f] : copy) H += c * f.hessian(v);
      return H;
    });
  out.with_batch([copy](std::span<const Vec3> v, std::span<double> o) {
    std::vector<double> tmp(v.size());
    std::fill(o.begin(), o.end(), 0.0);
    for (const auto& [c, f] : copy) {
      f.eval_batch(v, tmp);
      for (std::size_t i = 0; i < v.size(); ++i) o[i] += c * tmp[i];
    }
  });
  if (!all_diff) out.non_differentiable();
  return out;
}

VelocityField scaled_field(const VelocityField& f, double alpha, double lambda) {
  if (!(alpha >= 0.0) || !(lambda > 0.0)) throw ArgumentError("scaled_field needs alpha >= 0, lambda > 0");
  const auto& dec = f.decay();
  DecayInfo decay{dec.exponent, alpha * dec.amplitude * std::pow(std::min(1.0, lambda), -dec.exponent),
                  std::nullopt};
  if (dec.inner_void_radius) decay.inner_void_radius = *dec.inner_void_radius / lambda;
  VelocityField g(f.dim(), [=](const Vec3& v) { return alpha * f(lambda * v); }, decay);
  if (f.has_gradient()) g.with_gradient([=](const Vec3& v) { return (alpha * lambda) * f.gradient(lambda * v); });
  if (f.has_hessian()) g.with_hessian([=](const Vec3& v) { return (alpha * lambda * lambda) * f.hessian(lambda * v); });
  g.with_batch([=](std::span<const Vec3> v, std::span<double> out) {
    std::vector<Vec3> w(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) w[i] = lambda * v[i];
    f.eval_batch(w, out);
    for (double& x : out) x *= alpha;
  });
  if (!f.differentiable()) g.non_differentiable();
  return g;
}

VelocityField shifted_field(const VelocityField& f, const Vec3& shift) {
  const auto& dec = f.decay();
  // Peetre: <w - s>^{-m} <= (sqrt2 <s>)^m <w>^{-m}.
  DecayInfo decay{dec.exponent, dec.amplitude * std::pow(std::sqrt(2.0) * bracket(shift), dec.exponent),
                  std::nullopt};
  VelocityField g(f.dim(), [=](const Vec3& v) { return f(v - shift); }, decay);
  if (f.has_gradient()) g.with_gradient([=](const Vec3& v) { return f.gradient(v - shift); });
  if (f.has_hessian()) g.with_hessian([=](const Vec3& v) { return f.hessian(v - shift); });
  g.with_batch([=](std::span<const Vec3> v, std::span<double> out) {
    std::vector<Vec3> w(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) w[i] = v[i] - shift;
    f.eval_batch(w, out);
  });
  if (!f.differentiable()) g.non_differentiable();
  return g;
}

}  // namespace kinetic
