#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace skeptic {

// Static block partition of [0, n) over worker threads. Workers must write
// to disjoint locations; results are then independent of scheduling.
inline void parallel_for_blocks(
    std::ptrdiff_t n, const std::function<void(std::ptrdiff_t, std::ptrdiff_t)>& body,
    int num_threads = 0) {
  if (n <= 0) return;
  int threads = num_threads > 0
                    ? num_threads
                    : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::max(1, std::min<int>(threads, static_cast<int>(n)));
  if (threads == 1) {
    body(0, n);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  const std::ptrdiff_t chunk = (n + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    const std::ptrdiff_t begin = t * chunk;
    const std::ptrdiff_t end = std::min(n, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&body, begin, end] { body(begin, end); });
  }
  for (auto& th : pool) th.join();
}

inline void parallel_for_each(std::ptrdiff_t n,
                              const std::function<void(std::ptrdiff_t)>& fn,
                              int num_threads = 0) {
  parallel_for_blocks(
      n,
      [&fn](std::ptrdiff_t begin, std::ptrdiff_t end) {
        for (std::ptrdiff_t i = begin; i < end; ++i) fn(i);
      },
      num_threads);
}

}  // namespace skeptic
