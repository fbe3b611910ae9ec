#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace monodec {

// Deterministic chunked parallel sweep: fn(begin, end) runs on contiguous
// ranges whose boundaries depend only on (total, jobs), never on timing.
// Aggregation is up to the caller and must be order-independent.
template <typename Fn>
void parallel_chunks(unsigned jobs, size_t total, Fn&& fn) {
  if (jobs <= 1 || total < 2 * jobs) {
    fn(size_t(0), total);
    return;
  }
  std::vector<std::thread> threads;
  size_t chunk = (total + jobs - 1) / jobs;
  for (unsigned t = 0; t < jobs; ++t) {
    size_t begin = size_t(t) * chunk;
    size_t end = std::min(total, begin + chunk);
    if (begin >= end) break;
    threads.emplace_back([&fn, begin, end] { fn(begin, end); });
  }
  for (auto& th : threads) th.join();
}

}  // namespace monodec
