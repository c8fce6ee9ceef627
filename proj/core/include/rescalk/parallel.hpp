#pragma once

#include <cstddef>
#include <functional>

namespace rescalk {

/// Worker cap for parallel sections. Defaults to RESCALK_THREADS from the
/// environment, else the hardware concurrency. Always at least 1.
std::size_t max_threads();

/// Overrides the cap for this process; 0 restores the default.
void set_max_threads(std::size_t n);

/// Runs fn(0) .. fn(count-1), possibly concurrently. Results must be
/// written to per-index slots; if several calls throw, the lowest-index
/// exception is rethrown after all workers finish.
void parallel_for(std::size_t count,
                  const std::function<void(std::size_t)>& fn);

}  // namespace rescalk
