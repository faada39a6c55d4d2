#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

#include "kinetic/errors.hpp"
#include "kinetic/simd.hpp"
#include "kinetic/solver.hpp"

namespace kinetic {
namespace {

static_assert(std::endian::native == std::endian::little || std::endian::native == std::endian::big);

template <class T>
void put_le(std::ostream& os, T v) {
  unsigned char b[sizeof(T)];
  std::memcpy(b, &v, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(b, b + sizeof(T));
  os.write(reinterpret_cast<const char*>(b), sizeof(T));
}

template <class T>
T get_le(std::istream& is, const std::string& path) {
  unsigned char b[sizeof(T)];
  if (!is.read(reinterpret_cast<char*>(b), sizeof(T))) throw ParseError(path + ": truncated grid file");
  if constexpr (std::endian::native == std::endian::big) std::reverse(b, b + sizeof(T));
  T v;
  std::memcpy(&v, b, sizeof(T));
  return v;
}

std::size_t ipow(int n, int d) {
  std::size_t r = 1;
  for (int i = 0; i < d; ++i) r *= static_cast<std::size_t>(n);
  return r;
}

}  // namespace

GridField GridField::sample(const VelocityField& f, int n, double V) {
  if (n < 4 || n % 2) throw ArgumentError("grid size must be even and at least 4");
  if (!(V > 0.0)) throw ArgumentError("grid half-width must be positive");
  GridField g;
  g.dim = f.dim();
  g.n = n;
  g.V = V;
  g.h = 2.0 * V / n;
  g.values.resize(ipow(n, g.dim));
  std::vector<Vec3> nodes(g.values.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) nodes[i] = g.node(i);
  f.eval_batch(nodes, g.values);
  return g;
}

Vec3 GridField::node(std::size_t idx) const {
  Vec3 v;
  for (int a = dim - 1; a >= 0; --a) {
    v[a] = -V + h * static_cast<double>(idx % n);
    idx /= n;
  }
  return v;
}

double GridField::cell_volume() const { return std::pow(h, dim); }

void GridField::validate() const {
  if (dim != 2 && dim != 3) throw ConfigurationError("grid dimension must be 2 or 3");
  if (values.size() != ipow(n, dim)) throw ConfigurationError("grid payload size does not match n^d");
  double mx = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] >= 0.0)) throw ConfigurationError("grid value negative or non-finite at " + to_string(node(i)));
    mx = std::max(mx, values[i]);
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    std::size_t idx = i;
    bool ring = false;
    for (int a = 0; a < dim; ++a) {
      const std::size_t c = idx % n;
      ring = ring || c == 0 || c + 1 == static_cast<std::size_t>(n);
      idx /= n;
    }
    if (ring && values[i] > 1e-8 * mx) {
      std::ostringstream os;
      os.precision(17);
      os << "grid field not contained: boundary value " << values[i] << " at " << to_string(node(i));
      throw ConfigurationError(os.str());
    }
  }
}

void write_grid(const GridField& g, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ConfigurationError("cannot open " + path + " for writing");
  put_le<std::int32_t>(os, g.dim);
  put_le<std::int32_t>(os, g.n);
  put_le<double>(os, g.V);
  put_le<double>(os, g.h);
  for (double v : g.values) put_le<double>(os, v);
  if (!os) throw ConfigurationError("write failed for " + path);
}

GridField read_grid(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ConfigurationError("cannot open " + path);
  GridField g;
  g.dim = get_le<std::int32_t>(is, path);
  g.n = get_le<std::int32_t>(is, path);
  g.V = get_le<double>(is, path);
  g.h = get_le<double>(is, path);
  if (g.dim != 2 && g.dim != 3) throw ParseError(path + ": dimension must be 2 or 3");
  if (g.n < 4 || g.n > 4096) throw ParseError(path + ": implausible grid size");
  if (!(g.V > 0.0) || std::abs(g.h - 2.0 * g.V / g.n) > 1e-12 * g.h)
    throw ParseError(path + ": spacing does not equal 2V/n");
  g.values.resize(ipow(g.n, g.dim));
  for (double& v : g.values) v = get_le<double>(is, path);
  if (is.peek() != std::char_traits<char>::eof()) throw ParseError(path + ": trailing bytes after payload");
  return g;
}

Moments grid_moments(const GridField& g) {
  Moments m;
  const double dv = g.cell_volume();
  const int last = g.dim - 1;
  const std::size_t n = static_cast<std::size_t>(g.n);
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = -g.V + g.h * static_cast<double>(i);
  // Rows along the fastest axis; the other coordinates are constant on a row.
  const simd::KernelTable& K = simd::kernels();
  for (std::size_t row = 0; row < g.values.size() / n; ++row) {
    const simd::RowMoments r = K.row_moments(g.values.data() + row * n, x.data(), n);
    Vec3 lead = g.node(row * n);
    lead[last] = 0.0;
    m.mass += r.s0;
    m.momentum += r.s0 * lead;
    m.momentum[last] += r.s1;
    m.energy += 0.5 * (norm2(lead) * r.s0 + r.s2);
  }
  m.mass *= dv;
  m.momentum *= dv;
  m.energy *= dv;
  return m;
}

}  // namespace kinetic
