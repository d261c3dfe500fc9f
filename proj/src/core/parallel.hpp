#pragma once

#include <atomic>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace dwell {

// Worker threads to use: DWELL_THREADS if set, else hardware concurrency.
inline int thread_count() {
  if (const char* env = std::getenv("DWELL_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

// Executes fn(block_index, begin, end) for fixed-size blocks covering [0, n).
// Blocks run on any thread; block boundaries do not depend on the thread
// count, so callers that reduce per-block outputs in block order get
// identical results for any parallelism level.
inline void parallel_blocks(long n, long block_size,
                            const std::function<void(long, long, long)>& fn) {
  if (n <= 0) return;
  const long n_blocks = (n + block_size - 1) / block_size;
  const int workers = std::min<long>(thread_count(), n_blocks);

  if (workers <= 1) {
    for (long b = 0; b < n_blocks; ++b) {
      fn(b, b * block_size, std::min(n, (b + 1) * block_size));
    }
    return;
  }

  std::atomic<long> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const long b = next.fetch_add(1);
      if (b >= n_blocks) return;
      try {
        fn(b, b * block_size, std::min(n, (b + 1) * block_size));
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (int t = 0; t < workers; ++t) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace dwell
