#pragma once

#include <algorithm>
#include <functional>
#include <thread>
#include <vector>

namespace adann {

/// Runs fn(begin, end) over a contiguous partition of [0, n) on `workers`
/// threads. Callers must only write to disjoint, index-owned locations;
/// results are then independent of the worker count.
inline void parallel_for(long n, int workers,
                         const std::function<void(long, long)>& fn) {
  if (n <= 0) return;
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (workers <= 0) workers = std::max(1, hw);
  workers = static_cast<int>(std::min<long>(workers, n));
  if (workers == 1) {
    fn(0, n);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  long chunk = (n + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    long begin = w * chunk;
    long end = std::min(n, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&fn, begin, end] { fn(begin, end); });
  }
  for (auto& t : pool) t.join();
}

} // namespace adann
