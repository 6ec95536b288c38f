#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace cascade::mc {

// Fixed chunk size. Chunk boundaries must not depend on the thread count or
// the schedule, otherwise floating-point merges would not be reproducible.
inline constexpr std::uint64_t kReplicateChunk = 4096;

// Map-reduce over replicate indices [0, replicates). body(acc, r) folds one
// replicate into a chunk-local accumulator; partials are merged in chunk
// order afterwards, so results are bitwise independent of scheduling.
// Acc contract: copyable, merge(const Acc&); the `init` value must be the
// merge identity.
template <class Acc, class Body>
Acc run_replicates(std::uint64_t replicates, int threads, Body&& body, Acc init = Acc{}) {
    if (threads < 1) threads = 1;
    const std::uint64_t n_chunks = (replicates + kReplicateChunk - 1) / kReplicateChunk;
    if (n_chunks == 0) return init;

    std::vector<Acc> partials(n_chunks, init);
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr error;
    std::uint64_t error_chunk = ~0ull;
    std::mutex error_mutex;

    auto worker = [&]() {
        while (true) {
            const std::uint64_t c = next.fetch_add(1, std::memory_order_relaxed);
            if (c >= n_chunks) return;
            const std::uint64_t lo = c * kReplicateChunk;
            const std::uint64_t hi = std::min(lo + kReplicateChunk, replicates);
            try {
                for (std::uint64_t r = lo; r < hi; ++r) body(partials[c], r);
            } catch (...) {
                std::lock_guard<std::mutex> g(error_mutex);
                if (c < error_chunk) {
                    error_chunk = c;
                    error = std::current_exception();
                }
                return;
            }
        }
    };

    const int extra =
        static_cast<int>(std::min<std::uint64_t>(static_cast<std::uint64_t>(threads), n_chunks)) - 1;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(std::max(extra, 0)));
    for (int i = 0; i < extra; ++i) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    if (error) std::rethrow_exception(error);

    Acc out = std::move(init);
    for (auto& part : partials) out.merge(part);
    return out;
}

}  // namespace cascade::mc
