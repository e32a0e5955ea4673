#pragma once

#include <cstddef>
#include <functional>

namespace rheo {

// Process-wide worker count used by grid sampling and slicing. Parallelism
// only changes speed: every caller writes disjoint, index-addressed output.
void set_thread_count(unsigned n);
unsigned thread_count();

// Calls fn(begin, end) over contiguous chunks of [0, n). Chunks are
// processed on up to thread_count() threads.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace rheo
