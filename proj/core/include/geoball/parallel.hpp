#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace geoball {

inline constexpr const char* kWorkersEnv = "GEOBALL_WORKERS";

// requested > 0 wins; otherwise GEOBALL_WORKERS; otherwise 1.
inline int resolve_worker_count(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv(kWorkersEnv)) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return n;
    } catch (const std::exception&) {
    }
  }
  return 1;
}

// Calls body(i) for i in [0, count) over contiguous per-worker blocks.
// Results must be written to per-index slots; callers reduce in index order,
// which keeps sums bit-identical for any worker count. If several indices
// throw, the exception from the lowest index is rethrown.
template <class Body>
void parallel_for(std::size_t count, int workers, Body&& body) {
  if (count == 0) return;
  const std::size_t w = std::min<std::size_t>(static_cast<std::size_t>(std::max(workers, 1)), count);
  std::vector<std::exception_ptr> errors(w);
  auto run_block = [&](std::size_t b) {
    const std::size_t begin = count * b / w;
    const std::size_t end = count * (b + 1) / w;
    for (std::size_t i = begin; i < end; ++i) {
      try {
        body(i);
      } catch (...) {
        errors[b] = std::current_exception();
        return;
      }
    }
  };
  if (w == 1) {
    run_block(0);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(w - 1);
    for (std::size_t b = 1; b < w; ++b) threads.emplace_back(run_block, b);
    run_block(0);
    for (auto& t : threads) t.join();
  }
  for (std::size_t b = 0; b < w; ++b) {
    if (errors[b]) std::rethrow_exception(errors[b]);
  }
}

}  // namespace geoball
