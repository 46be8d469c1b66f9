#pragma once

#include <cstddef>
#include <functional>

namespace gipmax {

/// Thread count from the GIPMAX_THREADS environment variable, falling back to
/// std::thread::hardware_concurrency() (at least 1).
std::size_t default_thread_count();

/// Calls fn(i) for i in [0, count) on up to `threads` workers. Work is handed
/// out in index order; the first exception thrown by any call is rethrown
/// after all workers stop.
void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t)>& fn);

} // namespace gipmax
