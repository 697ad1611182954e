#pragma once

#include <cstdint>
#include <functional>

namespace mdclt {

// Process-wide worker count. 0 restores the hardware default.
void set_threads(int n);
int threads();

// Runs fn(i) for i in [0, count), split into one contiguous chunk per worker.
// fn must only touch state owned by item i; results are then independent of
// the worker count. Exceptions propagate (first one wins).
void parallel_for(std::int64_t count, const std::function<void(std::int64_t)>& fn);

// Chunked variant for loops that want per-worker scratch buffers.
void parallel_chunks(std::int64_t count,
                     const std::function<void(std::int64_t begin, std::int64_t end)>& fn);

}  // namespace mdclt
