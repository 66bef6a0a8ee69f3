#ifndef GPBOUND_PARALLEL_HPP
#define GPBOUND_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace gpbound {

/// Worker-thread cap: GPBOUND_THREADS when set (clamped to >= 1), otherwise
/// the hardware concurrency.
unsigned max_threads();

/// Runs fn(0..n-1) across up to max_threads() workers.  Results must be
/// written to per-index slots; iteration order inside a worker is ascending,
/// so output is deterministic regardless of thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace gpbound

#endif
