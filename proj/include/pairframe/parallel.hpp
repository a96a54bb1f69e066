#pragma once

#include <cstddef>
#include <functional>

namespace pairframe {

/// Worker count: PAIRFRAME_THREADS if set and positive, else the hardware
/// concurrency (at least 1).
std::size_t worker_count();

/// Calls body(i) for every i in [0, n). Each index is handled exactly once;
/// callers write results into per-index slots and reduce in index order, so
/// results never depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace pairframe
