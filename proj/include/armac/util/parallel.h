#pragma once

#include <functional>
#include <thread>
#include <vector>

namespace armac {

// Runs fn(0..n-1) across up to num_threads workers. Results must be
// written to per-index slots; together with per-index rng streams this
// keeps outputs identical for every thread count.
inline void parallel_for(int n, int num_threads,
                         const std::function<void(int)>& fn) {
  if (n <= 0) return;
  if (num_threads <= 1 || n == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  const int workers = std::min(num_threads, n);
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    threads.emplace_back([&, w]() {
      for (int i = w; i < n; i += workers) fn(i);
    });
  }
  for (auto& t : threads) t.join();
}

}  // namespace armac
