#pragma once

#include <cstddef>
#include <functional>

namespace oubstop {

/// Worker count: an explicit nonzero hint wins, then the OUBSTOP_THREADS
/// environment variable, then std::thread::hardware_concurrency().
unsigned resolve_workers(unsigned hint = 0);

/// Calls fn(i) for every i in [0, count), splitting the range into contiguous
/// chunks across workers. Returns after all calls finish. The first exception
/// thrown by any call is rethrown on the calling thread.
void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& fn);

}  // namespace oubstop
