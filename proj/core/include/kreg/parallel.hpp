#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace kreg {

struct Execution {
  unsigned threads = 1;
};

// Runs body(begin, end) over contiguous chunks of [0, count). Chunks never
// share output slots, so the result does not depend on the thread count.
template <typename Body>
void parallel_for(std::size_t count, const Execution& exec, Body&& body) {
  const std::size_t workers =
      std::min<std::size_t>(std::max(1u, exec.threads), count);
  if (workers <= 1) {
    body(std::size_t{0}, count);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  const std::size_t chunk = (count + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(count, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&body, begin, end] { body(begin, end); });
  }
}

}  // namespace kreg
