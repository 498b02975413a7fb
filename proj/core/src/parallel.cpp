#include "synsal/parallel.hpp"

#include <algorithm>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace synsal {

int resolve_workers(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : int(hw);
}

void parallel_for_slots(std::size_t n, int workers,
                        const std::function<void(std::size_t, std::size_t)>& fn) {
  workers = int(std::min<std::size_t>(std::size_t(resolve_workers(workers)), n));
  if (n == 0) return;
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(0, i);
    return;
  }

  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> threads;
  threads.reserve(std::size_t(workers));
  const std::size_t chunk = (n + std::size_t(workers) - 1) / std::size_t(workers);
  for (int t = 0; t < workers; ++t) {
    const std::size_t begin = std::size_t(t) * chunk;
    const std::size_t end = std::min(n, begin + chunk);
    if (begin >= end) break;
    threads.emplace_back([&, t, begin, end] {
      try {
        for (std::size_t i = begin; i < end; ++i) fn(std::size_t(t), i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& th : threads) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn) {
  parallel_for_slots(n, workers, [&fn](std::size_t, std::size_t i) { fn(i); });
}

}  // namespace synsal
