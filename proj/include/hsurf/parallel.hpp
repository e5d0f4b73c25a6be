#pragma once

#include <functional>

namespace hsurf {

// Worker count: HSURF_WORKERS env var if set, else hardware concurrency,
// clamped to [1, 8].
int default_workers();

// Run fn(begin, end) over a partition of [0, n) on `workers` threads
// (inline when workers <= 1 or n is small).  fn must only touch its slice.
void parallel_chunks(std::size_t n, int workers,
                     const std::function<void(std::size_t, std::size_t)>& fn);

} // namespace hsurf
