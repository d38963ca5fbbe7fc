#pragma once

#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace quasihelm {

// Index-parallel loop over [begin, end); rethrows the first worker exception.
inline void parallel_for(int begin, int end, const std::function<void(int)>& body,
                         unsigned num_threads = 0) {
  int count = end - begin;
  if (count <= 0) return;
  unsigned hw = num_threads ? num_threads : std::thread::hardware_concurrency();
  if (hw <= 1 || count == 1) {
    for (int i = begin; i < end; ++i) body(i);
    return;
  }
  unsigned workers = std::min<unsigned>(hw, static_cast<unsigned>(count));
  std::atomic<int> next(begin);
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      try {
        for (int i = next.fetch_add(1); i < end; i = next.fetch_add(1)) body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace quasihelm
