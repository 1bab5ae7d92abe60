#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace reco {

// Runs fn(begin, end) over a contiguous partition of [0, n). Each block is
// disjoint; callers write results into index-addressed slots so the output
// is identical for any thread count.
template <typename Fn>
void parallel_for(size_t n, int threads, Fn&& fn) {
  if (n == 0) return;
  const size_t workers = std::min<size_t>(std::max(threads, 1), n);
  if (workers <= 1) {
    fn(size_t{0}, n);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (size_t t = 0; t < workers; ++t) {
    const size_t begin = n * t / workers;
    const size_t end = n * (t + 1) / workers;
    pool.emplace_back([&fn, begin, end] { fn(begin, end); });
  }
  for (auto& th : pool) th.join();
}

}  // namespace reco
