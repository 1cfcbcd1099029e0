#pragma once

#include <cstddef>
#include <functional>

namespace kmpc {

// Number of worker threads: min(hardware, KMPC_THREADS). At least 1.
int thread_budget();

// Static partition of [0, n) into contiguous chunks, one per worker. The
// body sees every index exactly once; outputs written to index-owned slots
// are identical regardless of the schedule. Exceptions are rethrown on the
// calling thread.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace kmpc
