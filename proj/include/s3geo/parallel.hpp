#pragma once

#include <cstddef>
#include <functional>

namespace s3geo {

/// Runs run_range(begin, end) over a partition of [0, n) on a small thread
/// pool. Each range is disjoint, so writers into per-index slots need no
/// synchronization; results must not depend on the partition for the library
/// determinism guarantees to hold.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& run_range);

}  // namespace s3geo
