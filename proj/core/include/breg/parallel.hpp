#pragma once

#include <cstdint>
#include <functional>

namespace breg {

/// Worker count for parallel loops: BREG_THREADS if set and positive,
/// otherwise hardware concurrency.  BREG_THREADS=0 means auto.
int worker_count();

/// Runs body(i) for i in [0, n) on a static partition of the index range.
/// Each index must write only to its own output slot; results are then
/// bitwise independent of the thread count.  Exceptions are captured and
/// the first one is rethrown on the calling thread.
void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& body);

}  // namespace breg
