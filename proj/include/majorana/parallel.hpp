#pragma once

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace majorana {

// Worker count: explicit request, then the MAJORANA_THREADS environment
// variable, then hardware concurrency.
inline int resolve_thread_count(int requested = 0) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("MAJORANA_THREADS")) {
    char* end = nullptr;
    const long value = std::strtol(env, &end, 10);
    if (end != env && value > 0) return static_cast<int>(value);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

// Runs body(i) for i in [0, n) across contiguous index chunks. Callers write
// results into preallocated slots by index, so the thread count changes wall
// time only, never values. The first exception raised is rethrown here.
template <class Body>
inline void parallel_for_index(int n, int n_threads, Body&& body) {
  if (n <= 0) return;
  const int threads = std::min(std::max(resolve_thread_count(n_threads), 1), n);
  if (threads == 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  std::exception_ptr error;
  std::mutex error_mutex;
  for (int k = 0; k < threads; ++k) {
    const int begin = static_cast<int>(static_cast<long long>(n) * k / threads);
    const int end = static_cast<int>(static_cast<long long>(n) * (k + 1) / threads);
    pool.emplace_back([&body, &error, &error_mutex, begin, end] {
      try {
        for (int i = begin; i < end; ++i) body(i);
      } catch (...) {
        const std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (std::thread& worker : pool) worker.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace majorana
