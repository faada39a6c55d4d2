#include <atomic>
#include <cstdlib>
#include <cstring>

#include "kinetic/simd.hpp"

namespace kinetic::simd {
namespace {

Backend detect() {
  const char* env = std::getenv("KINETIC_SIMD");
  if (env != nullptr && std::strcmp(env, "scalar") == 0) return Backend::Scalar;
  return avx2_available() ? Backend::Avx2 : Backend::Scalar;
}

std::atomic<int>& selected() {
  static std::atomic<int> b{static_cast<int>(detect())};
  return b;
}

}  // namespace

bool avx2_available() {
#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
  if (detail::avx2_table() == nullptr) return false;
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend active_backend() { return static_cast<Backend>(selected().load()); }

void force_backend(Backend b) {
  if (b == Backend::Avx2 && !avx2_available()) b = Backend::Scalar;
  selected().store(static_cast<int>(b));
}

const char* backend_name(Backend b) { return b == Backend::Avx2 ? "avx2" : "scalar"; }

const KernelTable& kernels(Backend b) {
  if (b == Backend::Avx2 && avx2_available()) return *detail::avx2_table();
  return detail::scalar_table();
}

const KernelTable& kernels() { return kernels(active_backend()); }

}  // namespace kinetic::simd
