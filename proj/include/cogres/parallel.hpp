#pragma once

#include <cstddef>
#include <functional>

namespace cogres {

/// Calls fn(i) for i in [0, n) on up to `threads` workers. Work is handed out
/// by index, so callers that write results into slot i get identical output
/// for any thread count. The first exception thrown by a task is rethrown.
void parallel_for(std::size_t n, std::size_t threads,
                  const std::function<void(std::size_t)>& fn);

/// Thread count from COGRES_THREADS, or 1 if unset/invalid.
std::size_t threads_from_env();

}  // namespace cogres
