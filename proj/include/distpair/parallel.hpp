#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <vector>

namespace distpair {

// Worker count: DISTPAIR_THREADS when set to a positive integer (at most 256),
// otherwise the hardware concurrency.
unsigned worker_count();

// Runs task(i) for i in [0, n) on up to worker_count() threads. Each index runs
// exactly once; the first exception (by index) is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& task);

// Results are stored by input index, so aggregation order never depends on scheduling.
template <class T, class F>
std::vector<T> parallel_map(std::size_t n, F&& f) {
  std::vector<T> out(n);
  parallel_for(n, [&](std::size_t i) { out[i] = f(i); });
  return out;
}

}  // namespace distpair
