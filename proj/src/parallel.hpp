#pragma once

#include <cstddef>
#include <functional>

namespace aaudit {

// Number of workers to use for `work_items` independent tasks. Honors the
// ANNEALER_AUDIT_THREADS environment variable as an upper cap; falls back
// to hardware concurrency. Always at least 1.
unsigned worker_count(std::size_t work_items);

// Runs fn(begin, end) on contiguous index ranges partitioning [0, n).
// Ranges are fixed by n and the worker count alone, so any per-range
// output written to preallocated slots is independent of scheduling.
// Exceptions thrown by workers are rethrown on the calling thread.
void parallel_ranges(std::size_t n,
                     const std::function<void(std::size_t, std::size_t)>& fn);

} // namespace aaudit
