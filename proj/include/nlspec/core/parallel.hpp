#pragma once

#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace nlspec {

/// Caller-provided data-parallel loop: invoke body(k) for every k < count.
using ParallelFor = std::function<void(std::size_t count, const std::function<void(std::size_t)>& body)>;

inline void sequential_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  for (std::size_t k = 0; k < count; ++k) body(k);
}

/// Work-stealing-free dynamic schedule over a fixed set of threads. The first
/// exception thrown by any body is rethrown on the calling thread.
inline ParallelFor thread_pool_for(unsigned workers) {
  if (workers <= 1) return sequential_for;
  return [workers](std::size_t count, const std::function<void(std::size_t)>& body) {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto run = [&] {
      for (;;) {
        const std::size_t k = next.fetch_add(1);
        if (k >= count) return;
        try {
          body(k);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next.store(count);
          return;
        }
      }
    };
    {
      std::vector<std::jthread> pool;
      pool.reserve(workers - 1);
      for (unsigned w = 1; w < workers; ++w) pool.emplace_back(run);
      run();
    }
    if (failure) std::rethrow_exception(failure);
  };
}

/// Worker count from NLSPEC_WORKERS, else the given fallback.
inline unsigned workers_from_env(unsigned fallback) {
  if (const char* env = std::getenv("NLSPEC_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1 && v <= 4096) return static_cast<unsigned>(v);
  }
  return fallback;
}

}  // namespace nlspec
