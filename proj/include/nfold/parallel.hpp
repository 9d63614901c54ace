#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace nfold {

/// Runs body(i) for i in [0, count) across `threads` workers. Callers store
/// results by index and reduce sequentially afterwards, so the outcome is
/// identical for any thread count.
template <class F>
void parallel_for(int threads, std::size_t count, F&& body) {
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  const std::size_t workers = std::min<std::size_t>(threads, count);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([w, workers, count, &body] {
      for (std::size_t i = w; i < count; i += workers) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace nfold
