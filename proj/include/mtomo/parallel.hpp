#pragma once

#include <functional>

namespace mtomo {

/// Worker count from MOMENT_TOMO_THREADS (0 or unset = hardware concurrency).
int worker_count();

/// Runs body(i) for i in [begin, end) over contiguous chunks. Each index is
/// visited exactly once; bodies must not write shared state.
void parallel_for(int begin, int end, const std::function<void(int)>& body);

}  // namespace mtomo
