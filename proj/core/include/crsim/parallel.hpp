#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace crsim {

/// Default worker count: hardware concurrency, at least one.
inline unsigned default_workers() { return std::max(1u, std::thread::hardware_concurrency()); }

/// Evaluates fn(i) for i in [0, count) on up to `workers` threads and returns
/// the results indexed by i. Each index is evaluated exactly once, so results
/// never depend on the worker count as long as fn is pure in i.
template <typename T, typename Fn>
std::vector<T> run_replications(std::uint64_t count, unsigned workers, Fn&& fn) {
  std::vector<T> out(count);
  const std::uint64_t nthreads =
      std::min<std::uint64_t>(std::max(1u, workers), std::max<std::uint64_t>(count, 1));
  if (nthreads <= 1) {
    for (std::uint64_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }

  std::exception_ptr error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(nthreads);
    for (std::uint64_t t = 0; t < nthreads; ++t) {
      const std::uint64_t begin = count * t / nthreads;
      const std::uint64_t end = count * (t + 1) / nthreads;
      pool.emplace_back([&, begin, end] {
        try {
          for (std::uint64_t i = begin; i < end; ++i) out[i] = fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
  return out;
}

}  // namespace crsim
