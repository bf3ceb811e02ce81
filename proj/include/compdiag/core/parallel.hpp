#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

namespace compdiag {

// Worker count used by the parallel searches. 0 means hardware concurrency.
inline std::atomic<std::size_t>& worker_setting() {
  static std::atomic<std::size_t> workers{0};
  return workers;
}

inline void set_workers(std::size_t workers) { worker_setting().store(workers); }

inline std::size_t effective_workers() {
  const auto w = worker_setting().load();
  if (w != 0) return w;
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

// First exception raised by any worker, rethrown on the calling thread.
class ErrorSlot {
 public:
  void capture() {
    std::lock_guard lock(mutex_);
    if (!error_) error_ = std::current_exception();
  }
  void rethrow() {
    if (error_) std::rethrow_exception(error_);
  }

 private:
  std::mutex mutex_;
  std::exception_ptr error_;
};

// Runs task(i) for i in [0, task_count) and returns the result of the lowest
// index whose task produced one. Tasks above an already-found index are
// skipped, so results are identical for every worker count.
template <class T>
std::optional<T> parallel_find_first(std::size_t task_count, const std::function<std::optional<T>(std::size_t)>& task) {
  const auto workers = std::min(effective_workers(), std::max<std::size_t>(task_count, 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < task_count; ++i)
      if (auto r = task(i)) return r;
    return std::nullopt;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> best_index{task_count};
  std::vector<std::optional<T>> results(task_count);
  ErrorSlot error;
  auto run = [&] {
    for (;;) {
      const auto i = next.fetch_add(1);
      if (i >= task_count || i > best_index.load()) return;
      try {
        if (auto r = task(i)) {
          results[i] = std::move(r);
          auto cur = best_index.load();
          while (i < cur && !best_index.compare_exchange_weak(cur, i)) {
          }
        }
      } catch (...) {
        error.capture();
        next.store(task_count);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w + 1 < workers; ++w) pool.emplace_back(run);
  run();
  for (auto& t : pool) t.join();
  error.rethrow();
  const auto found = best_index.load();
  if (found >= task_count) return std::nullopt;
  return std::move(results[found]);
}

// Runs task(i) for every i and returns the results in index order.
template <class T>
std::vector<T> parallel_map(std::size_t task_count, const std::function<T(std::size_t)>& task) {
  std::vector<T> results(task_count);
  const auto workers = std::min(effective_workers(), std::max<std::size_t>(task_count, 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < task_count; ++i) results[i] = task(i);
    return results;
  }
  std::atomic<std::size_t> next{0};
  ErrorSlot error;
  auto run = [&] {
    for (auto i = next.fetch_add(1); i < task_count; i = next.fetch_add(1)) {
      try {
        results[i] = task(i);
      } catch (...) {
        error.capture();
        next.store(task_count);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w + 1 < workers; ++w) pool.emplace_back(run);
  run();
  for (auto& t : pool) t.join();
  error.rethrow();
  return results;
}

}  // namespace compdiag
