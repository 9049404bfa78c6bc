#pragma once

#include <functional>

namespace fscan {

/// Worker cap from FSCAN_THREADS, clamped to [1, hardware_concurrency].
/// Unset or unparsable -> 1: timing comparisons stay apples-to-apples
/// unless the user opts in.
int thread_budget();

/// Run fn(i) for i in [begin, end) on up to `threads` workers. Contiguous
/// index blocks per worker; fn must not touch shared mutable state except
/// through per-index slots. Falls back to a plain loop when threads <= 1.
void parallel_for(int begin, int end, int threads,
                  const std::function<void(int)>& fn);

}  // namespace fscan
