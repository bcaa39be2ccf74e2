#pragma once

#include <cstddef>
#include <functional>

namespace tvarch {

/// Number of worker threads: TVARCH_THREADS when set, otherwise the
/// hardware concurrency (at least 1).
unsigned thread_count();

/// Run fn(0..n-1), partitioned across worker threads in contiguous blocks.
/// Callers write results into pre-sized indexed slots, so the outcome does
/// not depend on scheduling. Exceptions must be handled inside fn.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace tvarch
