#pragma once

// Deterministic parallel sweep helper: work is split into contiguous index
// blocks, one per worker, so results are bit-identical for any thread count.

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace qca {

inline unsigned thread_count() {
  if (const char* env = std::getenv("QCA_THREADS")) {
    const long n = std::strtol(env, nullptr, 10);
    if (n >= 1) return static_cast<unsigned>(n);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

namespace detail {

// Keep BLAS single-threaded; we parallelize at task granularity ourselves.
struct BlasThreadGuard {
  BlasThreadGuard() {
#if defined(__unix__) || defined(__APPLE__)
    ::setenv("OPENBLAS_NUM_THREADS", "1", 0);
    ::setenv("OMP_NUM_THREADS", "1", 0);
#endif
  }
};
inline const BlasThreadGuard blas_thread_guard{};

}  // namespace detail

// Calls f(i) for i in [0, n). Exceptions from workers are rethrown (first by
// block order).
template <typename F>
void parallel_for(std::size_t n, F&& f, unsigned n_threads = 0) {
  if (n == 0) return;
  if (n_threads == 0) n_threads = thread_count();
  n_threads = static_cast<unsigned>(std::min<std::size_t>(n_threads, n));
  if (n_threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::vector<std::exception_ptr> errors(n_threads);
  std::vector<std::thread> workers;
  workers.reserve(n_threads);
  const std::size_t block = (n + n_threads - 1) / n_threads;
  for (unsigned t = 0; t < n_threads; ++t) {
    const std::size_t lo = t * block;
    const std::size_t hi = std::min(n, lo + block);
    workers.emplace_back([&, t, lo, hi] {
      try {
        for (std::size_t i = lo; i < hi; ++i) f(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& w : workers) w.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace qca
