#pragma once

#include <cstddef>
#include <functional>

namespace precut {

/// Worker count used by verification sweeps and table construction (default: hardware concurrency).
int thread_count();
void set_thread_count(int threads);

/// Runs body(i) for i in [0, count) on the worker pool; blocks until done.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace precut
