#pragma once

#include <cstddef>
#include <functional>

namespace metric_depth {

// Worker count used by parallel loops. Reads METRIC_DEPTH_THREADS on first
// use (0 or unset = hardware concurrency); `set_thread_count` overrides it.
std::size_t thread_count();
void set_thread_count(std::size_t threads);

// Runs body(i) for i in [0, count). Indices are handed out in increasing
// order; if any body throws, the exception from the smallest failing index is
// rethrown after all workers stop. Calls made from inside a worker run
// sequentially on that worker.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace metric_depth
