#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace fkdet {

/// Worker count from FKDET_THREADS, else the hardware concurrency (at least 1).
inline std::size_t default_thread_count() {
  if (const char* env = std::getenv("FKDET_THREADS")) {
    try {
      const long n = std::stol(env);
      if (n >= 1) return static_cast<std::size_t>(n);
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs fn(chunk) for chunk in [0, chunks). Chunks are claimed dynamically but
/// each writes only its own output slot, so results do not depend on the
/// thread count. The first exception thrown by any chunk is rethrown.
template <class Fn>
void parallel_for(std::size_t chunks, Fn&& fn, std::size_t threads = default_thread_count()) {
  threads = std::min(threads, chunks);
  if (threads <= 1) {
    for (std::size_t c = 0; c < chunks; ++c) fn(c);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (std::size_t c = next++; c < chunks; c = next++) {
      try {
        fn(c);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next = chunks;
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace fkdet
