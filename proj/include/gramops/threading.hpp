#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>

namespace gramops {

/// Global worker-thread count for data-parallel kernels. 0 = hardware default.
void set_num_threads(int n);
int num_threads();

/// Runs fn(begin, end) over [0, size) split into fixed 1<<16-element chunks.
/// Chunk boundaries do not depend on the thread count, and every output
/// element must be computed independently, so results are bit-identical for
/// any number of threads.
void parallel_for(std::size_t size, const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace gramops
