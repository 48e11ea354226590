#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace deltacone {

/// Runs body(begin, end, chunk) over [0, count) split into fixed-size chunks.
/// Chunk boundaries depend only on `count` and `chunk_size`, so per-chunk
/// partial results combined in chunk order are independent of thread count.
template <typename Body>
void parallel_chunks(std::size_t count, std::size_t chunk_size, Body&& body) {
    if (count == 0) return;
    chunk_size = std::max<std::size_t>(chunk_size, 1);
    const std::size_t chunks = (count + chunk_size - 1) / chunk_size;
    const std::size_t workers =
        std::min<std::size_t>(chunks, std::max(1u, std::thread::hardware_concurrency()));
    auto run = [&](std::size_t worker) {
        for (std::size_t c = worker; c < chunks; c += workers) {
            const std::size_t begin = c * chunk_size;
            body(begin, std::min(count, begin + chunk_size), c);
        }
    };
    if (workers == 1) {
        run(0);
        return;
    }
    std::vector<std::jthread> pool;
    pool.reserve(workers - 1);
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(run, w);
    run(0);
}

inline constexpr std::size_t kDefaultChunk = 4096;

inline std::size_t chunk_count(std::size_t count, std::size_t chunk_size = kDefaultChunk) {
    return (count + chunk_size - 1) / chunk_size;
}

}  // namespace deltacone
