#pragma once

#include <cstddef>
#include <functional>

namespace rfspectra {

/// Runs fn(i) for every i in [0, count) on `threads` workers (0 = hardware
/// concurrency). Tasks must write only to disjoint slots so that results are
/// independent of the schedule. The first exception thrown by a task is
/// rethrown after all workers join.
void parallel_for_index(std::size_t count, unsigned threads,
                        const std::function<void(std::size_t)>& fn);

}  // namespace rfspectra
