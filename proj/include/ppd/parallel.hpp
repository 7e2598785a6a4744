#pragma once

#include <cstddef>
#include <functional>

namespace ppd {

/// Worker count: PPD_THREADS if set and positive, else hardware concurrency (at least 1).
std::size_t default_thread_count();

/// Calls fn(i) for i in [0, count) on up to `threads` workers (0 = default_thread_count()).
/// Each index is visited exactly once; callers write results into disjoint slots.
void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& fn);

}  // namespace ppd
