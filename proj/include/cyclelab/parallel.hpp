#pragma once

#include <cstddef>
#include <functional>

namespace cyclelab {

/// Worker count: CYCLELAB_THREADS if set to a positive integer, else hardware concurrency,
/// never more than `cap` when cap > 0.
int worker_count(int cap = 0);

/// Runs body(i) for i in [0, n) on up to `threads` workers. Results must be written to
/// per-index slots by the caller; the exception of the lowest failing index is rethrown.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& body);

}  // namespace cyclelab
