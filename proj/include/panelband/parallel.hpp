#pragma once

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace panelband {

/// Run fn(task) for task = 0..n_tasks-1 on up to `threads` workers.
///
/// Work is partitioned by task index, never by thread, so any
/// floating-point result that depends only on its own task index is
/// bit-identical for every thread count. Callers make that true by keying
/// RNG substreams on the task index and writing to per-task slots.
template <typename Fn>
void parallel_for(int threads, long n_tasks, Fn&& fn) {
  if (threads < 1) threads = 1;
  if (threads == 1 || n_tasks <= 1) {
    for (long t = 0; t < n_tasks; ++t) fn(t);
    return;
  }
  std::atomic<long> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto worker = [&] {
    for (;;) {
      const long t = next.fetch_add(1, std::memory_order_relaxed);
      if (t >= n_tasks) return;
      try {
        fn(t);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  const int nw = static_cast<int>(std::min<long>(threads, n_tasks));
  pool.reserve(nw);
  for (int w = 0; w < nw; ++w) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

/// Default worker count: the PANELBAND_THREADS environment variable if set,
/// otherwise the hardware concurrency.
inline int default_threads() {
  if (const char* env = std::getenv("PANELBAND_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace panelband
