#pragma once

#include <cstddef>
#include <functional>

namespace curvball {

// Worker count: CURVBALL_THREADS if set to a positive integer, otherwise the
// hardware concurrency (at least 1).
int worker_count();

// Runs body(i) for i in [0, n) across worker_count() threads. Work items are
// claimed dynamically; callers must make each item's effect independent of
// which thread runs it. The first exception thrown by any item is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace curvball
