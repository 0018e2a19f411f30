#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace olab {

// Threads used by parallel maps; OLAB_THREADS caps it.
inline int thread_budget() {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (const char* env = std::getenv("OLAB_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1 && v < (long)hw) hw = (unsigned)v;
    if (v >= (long)hw && v <= 1024) hw = (unsigned)v;
  }
  return (int)hw;
}

// Chunked parallel map over [0, count). The body must write only to
// index-owned state, so results are identical for any thread count.
inline void parallel_for(long count, const std::function<void(long)>& body) {
  const int threads = thread_budget();
  if (threads <= 1 || count < 256) {
    for (long i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  const long chunk = (count + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    const long lo = t * chunk;
    const long hi = std::min(count, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &body] {
      for (long i = lo; i < hi; ++i) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace olab
