// SPDX-License-Identifier: MIT
#pragma once

#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace wrom {

// Runs fn(i) for every i in [0, count) on a small worker pool. Indices are
// claimed through an atomic counter and each call writes only its own slot in
// the caller's output, so results are deterministic for any thread count.
// The first worker exception is rethrown after all threads join.
inline void parallel_for(int count, const std::function<void(int)>& fn,
                         unsigned threads = 0) {
  if (count <= 0) return;
  if (threads == 0) threads = std::thread::hardware_concurrency();
  if (threads < 1) threads = 1;
  if (threads > static_cast<unsigned>(count))
    threads = static_cast<unsigned>(count);

  if (threads == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }

  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };

  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace wrom
