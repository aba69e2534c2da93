#pragma once

#include <cstddef>
#include <functional>

namespace rsbm {

/// Worker count: RSBM_THREADS if set to a positive integer, else the hardware
/// concurrency (at least 1).
unsigned worker_count();

/// Calls fn(i) for every i in [0, n), spreading indices over worker_count()
/// threads. The first exception thrown by any call is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace rsbm
