#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace tomokit {

/// Number of worker threads used by internal parallel loops.
///
/// Defaults to the hardware concurrency; the TOMOKIT_THREADS environment
/// variable caps it (values < 1 are ignored).
std::size_t worker_count();

/// Runs body(i) for i in [0, n), splitting the range into contiguous chunks.
///
/// Each index is visited exactly once and bodies must only write to
/// index-owned output, so results do not depend on the partitioning.
template <typename Body>
void parallel_for(std::size_t n, Body&& body) {
  const std::size_t workers = std::min(worker_count(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::size_t chunk = (n + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(n, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([begin, end, &body] {
      for (std::size_t i = begin; i < end; ++i) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace tomokit
