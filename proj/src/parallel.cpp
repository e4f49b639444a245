#include "bakerlab/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace bakerlab {

unsigned configured_threads() {
    unsigned requested = 0;
    if (const char* env = std::getenv("BAKERLAB_THREADS")) {
        try {
            const long v = std::stol(env);
            if (v > 0) requested = static_cast<unsigned>(v);
        } catch (const std::exception&) {
            requested = 0;
        }
    }
    if (requested == 0) requested = std::max(1u, std::thread::hardware_concurrency());
    return requested;
}

void parallel_for_blocks(std::size_t count, std::size_t grain, unsigned threads,
                         const std::function<void(std::size_t, std::size_t, std::size_t)>& body) {
    if (count == 0) return;
    grain = std::max<std::size_t>(grain, 1);
    const std::size_t blocks = block_count(count, grain);
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(std::max(threads, 1u), blocks));

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        for (;;) {
            const std::size_t b = next.fetch_add(1);
            if (b >= blocks) return;
            try {
                body(b, b * grain, std::min(count, (b + 1) * grain));
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next.store(blocks);
                return;
            }
        }
    };

    if (workers == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers - 1);
        for (unsigned t = 1; t < workers; ++t) pool.emplace_back(work);
        work();
    }
    if (failure) std::rethrow_exception(failure);
}

} // namespace bakerlab
