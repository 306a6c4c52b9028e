#pragma once

#include <cstddef>
#include <functional>

namespace liyau {

// Number of worker threads used by parallel_for: hardware concurrency,
// capped by the LIYAU_THREADS environment variable when it is set to a
// positive integer.
std::size_t worker_count();

// Runs fn(i) for i in [0, count), split into contiguous chunks across
// workers. fn must be safe to call concurrently for distinct i; results
// must be written to disjoint slots so that the outcome is independent of
// scheduling. Runs inline when count is small or only one worker is
// available.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace liyau
