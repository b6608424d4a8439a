#pragma once

#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace randnet {

/// Runs fn(0..n_tasks-1) on up to n_threads workers. Tasks must write their
/// results into pre-assigned slots indexed by task id; combined with seed
/// derivation by task index this makes every ensemble independent of the
/// worker count. The first exception thrown by any task is rethrown.
inline void parallel_tasks(int n_tasks, int n_threads, const std::function<void(int)>& fn) {
  if (n_tasks <= 0) return;
  if (n_threads < 1) n_threads = 1;
  n_threads = std::min(n_threads, n_tasks);

  if (n_threads == 1) {
    for (int i = 0; i < n_tasks; ++i) fn(i);
    return;
  }

  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mu;

  auto worker = [&] {
    for (int i = next.fetch_add(1); i < n_tasks; i = next.fetch_add(1)) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(n_threads));
  for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

inline int default_thread_count() {
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

}  // namespace randnet
