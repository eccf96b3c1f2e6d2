#pragma once

#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace qlin {

/* Index-parallel loop with dynamic chunking.  Work items must write only to
 * their own slots, which keeps results identical to the sequential order.
 * The first exception thrown by any worker is rethrown on the caller after
 * all workers stop.
 */
inline void parallel_for(size_t count, unsigned threads,
                         const std::function<void(size_t)>& body) {
  if (count == 0) return;
  unsigned hw = std::thread::hardware_concurrency();
  unsigned t = threads ? threads : (hw ? hw : 1);
  if (size_t(t) > count) t = unsigned(count);
  if (t <= 1) {
    for (size_t i = 0; i < count; ++i) body(i);
    return;
  }
  const size_t chunk = std::max<size_t>(1, count / (size_t(t) * 8));
  std::atomic<size_t> next{0};
  std::atomic<bool> failed{false};
  std::mutex mu;
  std::exception_ptr err;
  auto worker = [&]() {
    for (;;) {
      if (failed.load(std::memory_order_relaxed)) return;
      size_t lo = next.fetch_add(chunk);
      if (lo >= count) return;
      size_t hi = std::min(lo + chunk, count);
      try {
        for (size_t i = lo; i < hi; ++i) body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lk(mu);
        if (!err) err = std::current_exception();
        failed.store(true, std::memory_order_relaxed);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(t);
  for (unsigned i = 0; i < t; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace qlin
