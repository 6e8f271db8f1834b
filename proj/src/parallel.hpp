#pragma once

#include <algorithm>
#include <cstdint>
#include <thread>
#include <vector>

namespace colorcoal::detail {

inline unsigned worker_count(unsigned requested, std::uint64_t jobs) {
  const unsigned w = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::uint64_t>(w, std::max<std::uint64_t>(jobs, 1)));
}

/// Runs body(i) for i in [0, count) with one contiguous chunk per worker.
template <class Body>
void parallel_for(std::uint64_t count, unsigned workers, const Body& body) {
  if (workers <= 1) {
    for (std::uint64_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  const std::uint64_t chunk = (count + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t lo = w * chunk, hi = std::min(count, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &body] {
      for (std::uint64_t i = lo; i < hi; ++i) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace colorcoal::detail
