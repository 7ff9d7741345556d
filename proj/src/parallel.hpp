#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace trc {

inline unsigned resolve_workers(int workers) {
  if (workers > 0) return static_cast<unsigned>(workers);
  unsigned hc = std::thread::hardware_concurrency();
  return hc ? hc : 1;
}

// Runs fn(i, lane) for every i in [0, n), dynamically load-balanced; `lane`
// identifies the executing worker (for per-worker scratch). Each index is
// processed exactly once, so as long as fn writes only to per-index slots the
// result is independent of the worker count.
inline void parallel_for_lanes(size_t n, int workers,
                               const std::function<void(size_t, unsigned)>& fn) {
  unsigned w = resolve_workers(workers);
  if (w > n) w = n ? static_cast<unsigned>(n) : 1;
  if (w <= 1) {
    for (size_t i = 0; i < n; ++i) fn(i, 0);
    return;
  }

  std::atomic<size_t> next{0};
  std::mutex err_mutex;
  std::exception_ptr first_error;

  auto worker = [&](unsigned lane) {
    for (;;) {
      size_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= n) return;
      try {
        fn(i, lane);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (!first_error) first_error = std::current_exception();
        next.store(n, std::memory_order_relaxed);  // drain remaining work
        return;
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(w);
  for (unsigned t = 0; t < w; ++t) pool.emplace_back(worker, t);
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

inline void parallel_for(size_t n, int workers, const std::function<void(size_t)>& fn) {
  parallel_for_lanes(n, workers, [&](size_t i, unsigned) { fn(i); });
}

}  // namespace trc
