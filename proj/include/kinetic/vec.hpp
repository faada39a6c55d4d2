#pragma once

// Small fixed-size linear algebra for velocity space. Vectors always carry
// three slots; two-dimensional problems keep the third slot at zero.

#include <array>
#include <cmath>
#include <string>

namespace kinetic {

struct Vec3 {
  double x = 0, y = 0, z = 0;

  constexpr double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
  constexpr double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }

  constexpr Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
  constexpr Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
  constexpr Vec3& operator*=(double s) { x *= s; y *= s; z *= s; return *this; }
  friend constexpr bool operator==(const Vec3&, const Vec3&) = default;
};

constexpr Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
constexpr Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
constexpr Vec3 operator-(const Vec3& a) { return {-a.x, -a.y, -a.z}; }
constexpr Vec3 operator*(double s, Vec3 a) { return a *= s; }
constexpr Vec3 operator*(Vec3 a, double s) { return a *= s; }
constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
constexpr double norm2(const Vec3& a) { return dot(a, a); }
inline double norm(const Vec3& a) { return std::sqrt(norm2(a)); }
constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

// Japanese bracket <v> = sqrt(1 + |v|^2).
inline double bracket(const Vec3& v) { return std::sqrt(1.0 + norm2(v)); }

// Lexicographic order used for deterministic tie breaking.
constexpr bool lex_less(const Vec3& a, const Vec3& b) {
  if (a.x != b.x) return a.x < b.x;
  if (a.y != b.y) return a.y < b.y;
  return a.z < b.z;
}

std::string to_string(const Vec3& v);

struct Mat3 {
  std::array<std::array<double, 3>, 3> a{};

  static constexpr Mat3 zero() { return {}; }
  static constexpr Mat3 identity(int d = 3) {
    Mat3 m;
    for (int i = 0; i < d; ++i) m.a[i][i] = 1.0;
    return m;
  }
  static constexpr Mat3 outer(const Vec3& u, const Vec3& v) {
    Mat3 m;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m.a[i][j] = u[i] * v[j];
    return m;
  }

  constexpr double operator()(int i, int j) const { return a[i][j]; }
  constexpr double& operator()(int i, int j) { return a[i][j]; }

  constexpr Mat3& operator+=(const Mat3& o) {
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) a[i][j] += o.a[i][j];
    return *this;
  }
  constexpr Mat3& operator-=(const Mat3& o) {
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) a[i][j] -= o.a[i][j];
    return *this;
  }
  constexpr Mat3& operator*=(double s) {
    for (auto& row : a)
      for (double& x : row) x *= s;
    return *this;
  }
  constexpr double trace() const { return a[0][0] + a[1][1] + a[2][2]; }
};

constexpr Mat3 operator+(Mat3 a, const Mat3& b) { return a += b; }
constexpr Mat3 operator-(Mat3 a, const Mat3& b) { return a -= b; }
constexpr Mat3 operator*(double s, Mat3 a) { return a *= s; }

constexpr Vec3 operator*(const Mat3& m, const Vec3& v) {
  return {m(0, 0) * v.x + m(0, 1) * v.y + m(0, 2) * v.z,
          m(1, 0) * v.x + m(1, 1) * v.y + m(1, 2) * v.z,
          m(2, 0) * v.x + m(2, 1) * v.y + m(2, 2) * v.z};
}

// Frobenius contraction sum_ij A_ij B_ij.
constexpr double contract(const Mat3& A, const Mat3& B) {
  double s = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) s += A(i, j) * B(i, j);
  return s;
}

double frobenius_norm(const Mat3& m);

// Projection onto the plane orthogonal to z, restricted to the first d axes.
// z must be nonzero.
Mat3 projection_orthogonal(const Vec3& z, int d);

// Eigenvalues of the symmetric matrix, ascending.
std::array<double, 3> symmetric_eigenvalues(const Mat3& m);

// Orthonormal pair spanning the plane orthogonal to the unit vector n (d = 3).
void orthonormal_complement(const Vec3& n, Vec3& t1, Vec3& t2);

// Unit vector orthogonal to n inside the xy-plane (d = 2).
inline Vec3 perpendicular_2d(const Vec3& n) { return {-n.y, n.x, 0.0}; }

}  // namespace kinetic
