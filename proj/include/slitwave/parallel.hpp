#pragma once

#include <cstddef>
#include <functional>

namespace slitwave {

/// Worker count: SLITWAVE_THREADS if set and positive, else hardware concurrency.
unsigned worker_count();

/// Runs body(begin, end) over contiguous chunks of [0, n). Each index is
/// visited exactly once; results written per index are schedule independent.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace slitwave
