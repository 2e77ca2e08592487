#pragma once

#include <cstddef>
#include <functional>

namespace ordlab {

// Runs fn(i) for every i in [0, count) on up to max_threads workers
// (max_threads <= 0 means hardware concurrency). Work items must write only
// to per-index slots so that scheduling order is unobservable; the first
// exception thrown by a worker is rethrown on the calling thread.
void parallel_for_index(std::size_t count, int max_threads,
                        const std::function<void(std::size_t)>& fn);

}  // namespace ordlab
