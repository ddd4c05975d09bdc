#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace tandemq {

inline int resolve_threads(int requested) {
  if (requested > 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Static block partition of [0, count). The callable must only write state
// owned by index i; results are then independent of the thread count.
template <class F>
void parallel_for(std::size_t count, int threads, F&& fn) {
  int t = resolve_threads(threads);
  if (t <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  if (static_cast<std::size_t>(t) > count) t = static_cast<int>(count);
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(t));
  for (int k = 0; k < t; ++k) {
    std::size_t lo = count * static_cast<std::size_t>(k) / static_cast<std::size_t>(t);
    std::size_t hi = count * (static_cast<std::size_t>(k) + 1) / static_cast<std::size_t>(t);
    pool.emplace_back([lo, hi, &fn] {
      for (std::size_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace tandemq
