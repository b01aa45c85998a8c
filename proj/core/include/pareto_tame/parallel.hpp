#ifndef PARETO_TAME_PARALLEL_HPP
#define PARETO_TAME_PARALLEL_HPP

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "pareto_tame/common.hpp"

namespace pareto_tame {

/// Runs body(i) for i in [0, count) on up to thread_cap() threads. Each index
/// is visited exactly once; callers write to per-index slots so results do
/// not depend on scheduling. The first exception thrown by any body is
/// rethrown on the calling thread.
template <typename Body>
void parallel_for(std::size_t count, Body&& body) {
  const std::size_t workers =
      std::min<std::size_t>(thread_cap(), std::max<std::size_t>(count / 64, 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> threads;
  threads.reserve(workers);
  const std::size_t chunk = (count + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(count, begin + chunk);
    if (begin >= end) break;
    threads.emplace_back([&, begin, end] {
      try {
        for (std::size_t i = begin; i < end; ++i) body(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace pareto_tame

#endif  // PARETO_TAME_PARALLEL_HPP
