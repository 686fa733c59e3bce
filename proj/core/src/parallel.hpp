#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace hcox::detail {

inline unsigned resolve_threads(unsigned requested) {
  if (requested) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

// body(chunk, lo, hi) over contiguous index ranges, one per thread.
template <class F>
void parallel_for(std::size_t count, unsigned threads, F&& body, std::size_t serial_below = 2048) {
  if (threads <= 1 || count < serial_below) {
    body(0u, std::size_t{0}, count);
    return;
  }
  std::vector<std::thread> pool;
  const std::size_t chunk = (count + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    const std::size_t lo = t * chunk, hi = std::min(count, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&, t, lo, hi] { body(t, lo, hi); });
  }
  for (auto& th : pool) th.join();
}

}  // namespace hcox::detail
