#pragma once

#include <functional>

namespace sfdbp {

/// Worker count: hardware concurrency, capped by the SFDBP_THREADS environment variable.
int worker_count();

/// Runs body(i) for i in [begin, end) across worker_count() threads in contiguous chunks.
/// Callers must only write to locations owned by index i; results are then independent
/// of scheduling.
void parallel_for(int begin, int end, const std::function<void(int)>& body);

}  // namespace sfdbp
