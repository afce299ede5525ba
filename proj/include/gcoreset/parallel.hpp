#pragma once

// Minimal fork-join helper. Work items are indexed; callers write results
// into per-index slots and reduce in index order afterwards, so output never
// depends on the thread count.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace gcoreset {

/// Upper bound on worker threads; 0 restores the hardware default.
void set_max_threads(std::size_t n) noexcept;
std::size_t max_threads() noexcept;

namespace detail {
/// Set on worker threads; nested parallel_for calls run serially.
inline thread_local bool in_parallel_region = false;
}  // namespace detail

template <class Body>
void parallel_for(std::size_t n, Body&& body) {
  const std::size_t workers = detail::in_parallel_region ? 1 : std::min(max_threads(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto run = [&] {
    const bool was_inside = detail::in_parallel_region;
    detail::in_parallel_region = true;
    for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(n);
      }
    }
    detail::in_parallel_region = was_inside;
  };
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers - 1);
    for (std::size_t t = 1; t < workers; ++t) pool.emplace_back(run);
    run();
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace gcoreset
