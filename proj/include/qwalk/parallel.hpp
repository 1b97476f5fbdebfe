#pragma once

#include <cstddef>
#include <functional>

namespace qwalk {

/// Worker count: QWALK_THREADS if set and positive, else hardware concurrency (at least 1).
unsigned worker_count();

/// Runs body(i) for i in [0, n) over worker_count() threads. Each index runs exactly
/// once; the first exception thrown by any body is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace qwalk
