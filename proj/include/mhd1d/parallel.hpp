#pragma once

#include <cstddef>
#include <functional>

namespace mhd1d {

/// Worker count for ladder-parallel studies: hardware concurrency, capped by
/// the MHD1D_THREADS environment variable when set. Always at least 1.
int worker_count();

/// Runs task(i) for i in [0, n_tasks) on a small thread pool. Tasks must be
/// independent; results should be written to pre-sized slots so aggregation
/// order never depends on scheduling. If any task throws, the exception from
/// the lowest task index is rethrown after all workers join.
void parallel_for_ordered(std::size_t n_tasks, const std::function<void(std::size_t)>& task);

}  // namespace mhd1d
