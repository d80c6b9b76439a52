#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace gausswig {

// Thread count for embarrassingly parallel loops: GAUSSWIG_THREADS if set,
// otherwise hardware concurrency.
inline int thread_count() {
  if (const char* env = std::getenv("GAUSSWIG_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

// Runs fn(i) for i in [0, n).  Work items must write only to their own
// slots; iteration-to-slot assignment is static, so results are identical
// for every thread count.
inline void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& fn,
                         int threads = thread_count()) {
  if (n <= 0) return;
  if (threads <= 1 || n == 1) {
    for (std::int64_t i = 0; i < n; ++i) fn(i);
    return;
  }
  if (threads > n) threads = static_cast<int>(n);
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t]() {
      for (std::int64_t i = t; i < n; i += threads) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace gausswig
