#include "kinetic/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "kinetic/simd.hpp"

namespace kinetic {
namespace {
std::atomic<int> g_threads{1};
}

void set_thread_count(int n) { g_threads.store(std::max(1, n)); }
int thread_count() { return g_threads.load(); }

void for_each_chunk(std::size_t n, std::size_t chunk,
                    const std::function<void(std::size_t, std::size_t, std::size_t)>& fn) {
  const std::size_t chunks = chunk_count(n, chunk);
  const auto workers = static_cast<std::size_t>(std::min<std::size_t>(thread_count(), chunks));
  if (workers <= 1) {
    for (std::size_t c = 0; c < chunks; ++c) fn(c, c * chunk, std::min(n, (c + 1) * chunk));
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex err_mutex;
  std::exception_ptr err;
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < workers; ++t)
      pool.emplace_back([&] {
        try {
          for (std::size_t c = next++; c < chunks; c = next++) fn(c, c * chunk, std::min(n, (c + 1) * chunk));
        } catch (...) {
          std::lock_guard lock(err_mutex);
          if (!err) err = std::current_exception();
          next = chunks;
        }
      });
  }
  if (err) std::rethrow_exception(err);
}

double pairwise_sum(std::span<const double> x) { return simd::kernels().sum(x.data(), x.size()); }

}  // namespace kinetic
