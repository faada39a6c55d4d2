#include "kinetic/vec.hpp"

#include <Eigen/Eigenvalues>
#include <cstdio>

#include "kinetic/errors.hpp"

namespace kinetic {

const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::Argument: return "argument error";
    case ErrorKind::Domain: return "domain error";
    case ErrorKind::Evaluation: return "evaluation error";
    case ErrorKind::Capability: return "capability error";
    case ErrorKind::UnsupportedParameter: return "unsupported-parameter error";
    case ErrorKind::Configuration: return "configuration error";
    case ErrorKind::Infeasibility: return "infeasibility";
    case ErrorKind::KernelRejection: return "kernel rejected";
    case ErrorKind::ColdGas: return "cold-gas error";
    case ErrorKind::Parse: return "parse error";
    case ErrorKind::SearchFailure: return "search failure";
    case ErrorKind::RunAborted: return "run aborted";
  }
  return "error";
}

std::string to_string(const Vec3& v) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "(%.17g, %.17g, %.17g)", v.x, v.y, v.z);
  return buf;
}

double frobenius_norm(const Mat3& m) { return std::sqrt(contract(m, m)); }

Mat3 projection_orthogonal(const Vec3& z, int d) {
  const double n2 = norm2(z);
  Mat3 p = Mat3::identity(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) p(i, j) -= z[i] * z[j] / n2;
  return p;
}

std::array<double, 3> symmetric_eigenvalues(const Mat3& m) {
  Eigen::Matrix3d a;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a(i, j) = m(i, j);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es;
  es.computeDirect(a, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  return {ev(0), ev(1), ev(2)};
}

void orthonormal_complement(const Vec3& n, Vec3& t1, Vec3& t2) {
  // Pick the coordinate axis least aligned with n.
  Vec3 a{1, 0, 0};
  if (std::abs(n.y) < std::abs(n.x) && std::abs(n.y) <= std::abs(n.z)) a = {0, 1, 0};
  else if (std::abs(n.z) < std::abs(n.x) && std::abs(n.z) < std::abs(n.y)) a = {0, 0, 1};
  t1 = a - dot(a, n) * n;
  t1 *= 1.0 / norm(t1);
  t2 = cross(n, t1);
}

}  // namespace kinetic
