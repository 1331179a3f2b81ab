#pragma once

#include <cstdint>
#include <functional>

namespace turan {

// requested > 0: that many threads. requested == 0: TURAN_THREADS from the
// environment when set, otherwise the hardware count, capped to [1, 8].
int resolve_threads(int requested);

// Splits [0, total) into contiguous blocks, one per thread, and runs
// fn(thread_index, lo, hi) concurrently. Falls back to a direct call when
// a single block suffices.
void parallel_blocks(std::uint64_t total, int threads,
                     const std::function<void(int, std::uint64_t, std::uint64_t)>& fn);

}  // namespace turan
