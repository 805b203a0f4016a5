#pragma once

#include <cstddef>
#include <functional>

namespace blurfisher {

/// Worker count: BLURFISHER_THREADS if set and positive, else hardware concurrency.
std::size_t thread_budget();

/// Runs body(i) for i in [0, count). Each index is visited exactly once; callers
/// write results into per-index slots so the outcome does not depend on scheduling.
/// The first exception thrown by any body is rethrown on the calling thread.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body,
                  std::size_t max_threads = 0);

}  // namespace blurfisher
