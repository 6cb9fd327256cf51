#pragma once

#include <cstdint>
#include <functional>

namespace speq {

// Worker cap from the SPERNER_EQ_THREADS environment variable.
// Unset or 0 means hardware concurrency.
int worker_count();

// Splits [0, count) into contiguous chunks, one worker thread per chunk.
// fn(begin, end) must only touch state owned by its own chunk; results
// assembled by chunk index are deterministic regardless of thread count.
void parallel_chunks(std::int64_t count,
                     const std::function<void(std::int64_t, std::int64_t)>& fn);

}  // namespace speq
