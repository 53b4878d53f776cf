#pragma once

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace sparsedom {

// Worker count: hardware concurrency capped by SPARSE_DYADIC_THREADS.
inline int effective_threads() {
  int n = static_cast<int>(std::thread::hardware_concurrency());
  if (n < 1) n = 1;
  if (const char* env = std::getenv("SPARSE_DYADIC_THREADS")) {
    int cap = std::atoi(env);
    if (cap >= 1) n = std::min(n, cap);
  }
  return std::min(n, 64);
}

// Splits [0, count) into contiguous chunks; fn(begin, end) per chunk.  Each
// index is processed independently, so results do not depend on the split.
template <class Fn>
void parallel_for(long long count, Fn&& fn) {
  int workers = effective_threads();
  if (workers <= 1 || count < 2 * workers) {
    fn(0, count);
    return;
  }
  std::vector<std::thread> pool;
  long long chunk = (count + workers - 1) / workers;
  for (int t = 0; t < workers; ++t) {
    long long begin = t * chunk, end = std::min(count, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&fn, begin, end] { fn(begin, end); });
  }
  for (std::thread& th : pool) th.join();
}

}  // namespace sparsedom
