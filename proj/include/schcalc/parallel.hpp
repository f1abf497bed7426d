#pragma once

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace schcalc {

/// Thread cap: min(SCHCALC_THREADS, hardware concurrency), at least 1.
int max_threads();

/// Runs fn(i) for i in [0, count). Workers own disjoint index strips and
/// must only write to per-index slots, so results are identical for any
/// thread count; reductions belong after the loop, in index order.
template <typename Fn>
void parallel_for(long count, Fn&& fn) {
  const int threads = static_cast<int>(std::min<long>(max_threads(), std::max<long>(count, 1)));
  if (threads <= 1 || count < 256) {
    for (long i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  const long strip = (count + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    const long begin = t * strip;
    const long end = std::min(count, begin + strip);
    if (begin >= end) break;
    pool.emplace_back([begin, end, &fn] {
      for (long i = begin; i < end; ++i) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace schcalc
