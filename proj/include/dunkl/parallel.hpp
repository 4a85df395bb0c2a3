#pragma once

#include <algorithm>
#include <functional>
#include <thread>
#include <vector>

namespace dunkl {

inline int resolve_threads(int threads) {
  if (threads > 0) return threads;
  unsigned hw = std::thread::hardware_concurrency();
  return static_cast<int>(std::clamp(hw, 1u, 16u));
}

// Runs fn(i) for i in [0, n); each index writes only its own slots, so the
// result does not depend on the thread count.
inline void parallel_for(size_t n, int threads,
                         const std::function<void(size_t)>& fn) {
  const int nt = std::min<size_t>(resolve_threads(threads), n == 0 ? 1 : n);
  if (nt <= 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(nt);
  for (int t = 0; t < nt; ++t) {
    pool.emplace_back([&, t]() {
      for (size_t i = t; i < n; i += nt) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace dunkl
