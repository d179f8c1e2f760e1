// Index-parallel loop over std::thread workers. Results are written by
// index, so output order never depends on scheduling.

#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace stabscope {

inline unsigned default_workers() { return std::max(1U, std::thread::hardware_concurrency()); }

/// Calls body(i) for i in [0, count). The first exception thrown by any
/// task is rethrown after all workers have stopped.
template <class Body>
void parallel_for(std::size_t count, unsigned workers, Body&& body) {
  workers = std::max(1U, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto run = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next = count;
      }
    }
  };
  if (workers == 1) {
    run();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
}

} // namespace stabscope
