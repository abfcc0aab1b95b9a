#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace jsrec::detail {

// Runs fn(i) for i in [0, count) on `workers` threads. Items are claimed from
// a shared counter, so callers must write results into per-item slots.
template <class Fn>
void parallel_for(std::size_t count, int workers, Fn&& fn) {
  if (workers <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto body = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < count;) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::jthread> pool;
  const auto n = static_cast<std::size_t>(workers) < count ? static_cast<std::size_t>(workers) : count;
  for (std::size_t w = 0; w < n; ++w) pool.emplace_back(body);
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace jsrec::detail
