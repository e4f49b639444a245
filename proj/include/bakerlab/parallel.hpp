#pragma once

#include <cstddef>
#include <functional>

namespace bakerlab {

/// Worker count from BAKERLAB_THREADS; 0, unset or unparsable means
/// std::thread::hardware_concurrency().
unsigned configured_threads();

/// Splits [0, count) into contiguous blocks of `grain` items and hands them
/// to `threads` workers. Block boundaries depend only on count and grain, so
/// any per-block result is independent of the worker count.
void parallel_for_blocks(std::size_t count, std::size_t grain, unsigned threads,
                         const std::function<void(std::size_t block, std::size_t begin, std::size_t end)>& body);

inline std::size_t block_count(std::size_t count, std::size_t grain) noexcept {
    return (count + grain - 1) / grain;
}

} // namespace bakerlab
