#pragma once

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace tt {

// Worker count: hardware concurrency capped by the TT_MAX_THREADS
// environment variable. TT_MAX_THREADS=1 forces sequential execution.
inline unsigned worker_count() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* cap = std::getenv("TT_MAX_THREADS")) {
    const long v = std::strtol(cap, nullptr, 10);
    if (v >= 1 && static_cast<unsigned>(v) < n) n = static_cast<unsigned>(v);
  }
  return n;
}

// Chunked parallel loop over [0, n). Chunks are contiguous and assigned
// statically, so callers that merge per-chunk partials in index order get
// results independent of the thread count.
inline void parallel_for(size_t n, const std::function<void(size_t, size_t)>& body) {
  const unsigned workers = worker_count();
  if (workers <= 1 || n < 2048) {
    body(0, n);
    return;
  }
  const size_t chunk = (n + workers - 1) / workers;
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    const size_t lo = std::min(n, w * chunk);
    const size_t hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    threads.emplace_back(body, lo, hi);
  }
  for (auto& t : threads) t.join();
}

}  // namespace tt
