#pragma once

#include <cstddef>
#include <functional>

namespace cskern {

/// Number of worker threads: KERNEL_VERIFY_THREADS if set to a positive
/// integer, otherwise the hardware concurrency.
int worker_count();

/// Runs fn(i) for i in [0, n) on worker_count() threads. Indices are handed
/// out in contiguous blocks; the first exception thrown is rethrown here.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace cskern
