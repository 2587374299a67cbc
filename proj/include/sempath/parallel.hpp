/*
 * Copyright 2026 The sempath authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace sempath {

// Process-wide worker cap, settable from the CLI (--threads).
unsigned max_threads();
void set_max_threads(unsigned n);

// Runs fn(begin, end) over contiguous chunks of [0, count).  Chunk boundaries
// depend only on count and chunk_size, never on the worker count, so any
// reduction that combines per-chunk results in chunk order is deterministic.
template <typename Fn>
void parallel_chunks(std::size_t count, std::size_t chunk_size, Fn&& fn) {
    if (count == 0) return;
    if (chunk_size == 0) chunk_size = 1;
    const std::size_t num_chunks = (count + chunk_size - 1) / chunk_size;
    unsigned workers = max_threads();
    if (workers > num_chunks) workers = static_cast<unsigned>(num_chunks);
    if (workers <= 1) {
        for (std::size_t c = 0; c < num_chunks; ++c) {
            const std::size_t begin = c * chunk_size;
            const std::size_t end = std::min(count, begin + chunk_size);
            fn(begin, end);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (;;) {
            const std::size_t c = next.fetch_add(1);
            if (c >= num_chunks) break;
            const std::size_t begin = c * chunk_size;
            const std::size_t end = std::min(count, begin + chunk_size);
            fn(begin, end);
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (unsigned t = 0; t + 1 < workers; ++t) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
}

// Convenience wrapper for element-wise independent work.
template <typename Fn>
void parallel_for_each_index(std::size_t count, Fn&& fn) {
    parallel_chunks(count, 64, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) fn(i);
    });
}

}  // namespace sempath
