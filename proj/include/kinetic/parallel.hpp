#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace kinetic {

// Process-wide worker count used by the chunked loops below (default 1).
void set_thread_count(int n);
int thread_count();

// Calls fn(chunk_id, begin, end) for the fixed chunks [k*chunk, min(n,(k+1)*chunk)).
// Chunk boundaries depend only on n and chunk, never on the thread count, so
// reductions over per-chunk partials are reproducible.
void for_each_chunk(std::size_t n, std::size_t chunk,
                    const std::function<void(std::size_t, std::size_t, std::size_t)>& fn);

inline std::size_t chunk_count(std::size_t n, std::size_t chunk) { return (n + chunk - 1) / chunk; }

// Pairwise sum through the active SIMD backend.
double pairwise_sum(std::span<const double> x);

}  // namespace kinetic
