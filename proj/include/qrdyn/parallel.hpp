#pragma once

#include <cstddef>
#include <functional>

namespace qrdyn {

/// Worker count used by all data-parallel loops. 0 = hardware concurrency.
void set_worker_count(int n);
int worker_count();

/// Runs fn(i) for i in [0, n) on worker_count() threads in contiguous
/// blocks. Results must be written to preallocated per-index slots so the
/// outcome is independent of scheduling. Exceptions are captured and the
/// first one (by block index) is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace qrdyn
