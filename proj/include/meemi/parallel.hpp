#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace meemi {

/// Worker count from MEEMI_THREADS; 0 or unset means hardware concurrency.
std::size_t worker_count();

/// Runs fn(begin, end) over contiguous chunks of [0, n). Each index is
/// visited exactly once; the first exception thrown by a worker is rethrown.
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  if (n == 0) return;
  const std::size_t workers = std::min(worker_count(), n);
  if (workers <= 1) {
    fn(std::size_t{0}, n);
    return;
  }
  const std::size_t chunk = (n + workers - 1) / workers;
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> threads;
    threads.reserve(workers);
    for (std::size_t begin = 0; begin < n; begin += chunk) {
      const std::size_t end = std::min(n, begin + chunk);
      threads.emplace_back([&, begin, end] {
        try {
          fn(begin, end);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

/// Runs fn(begin, end) over fixed-size row blocks. Block boundaries do not
/// depend on the worker count, so blocked floating-point kernels give the same
/// bits however many threads run them.
template <typename Fn>
void for_each_block(std::size_t rows, std::size_t block_rows, Fn&& fn) {
  const std::size_t blocks = (rows + block_rows - 1) / block_rows;
  parallel_for(blocks, [&](std::size_t first, std::size_t last) {
    for (std::size_t b = first; b < last; ++b) {
      const std::size_t begin = b * block_rows;
      fn(begin, std::min(rows, begin + block_rows));
    }
  });
}

}  // namespace meemi
