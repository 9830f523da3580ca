#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace mhrev {

/// Worker count: MHREV_THREADS when set (clamped to >= 1), otherwise the
/// hardware concurrency.
inline int thread_budget() {
  if (const char* env = std::getenv("MHREV_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Runs f(i) for i in [begin, end) across up to thread_budget() threads.
/// Tasks must write to disjoint slots; the partition is static so results
/// never depend on scheduling.
template <typename F>
void parallel_for_index(int begin, int end, F&& f) {
  const int count = end - begin;
  if (count <= 0) return;
  const int workers = std::min(thread_budget(), count);
  if (workers == 1) {
    for (int i = begin; i < end; ++i) f(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (int i = begin + w; i < end; i += workers) f(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace mhrev
