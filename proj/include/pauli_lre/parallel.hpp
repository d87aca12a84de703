// Copyright 2026 The pauli-lre Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace pauli_lre {

/// 0 means "one worker per hardware thread".
inline unsigned resolve_threads(unsigned requested) noexcept {
    if (requested != 0) return requested;
    return std::max(1u, std::thread::hardware_concurrency());
}

struct ChunkRange {
    std::uint64_t begin;
    std::uint64_t end;
};

/// Contiguous static partition of [0, count) into `workers` ranges. The
/// partition depends only on (count, workers), never on scheduling.
inline ChunkRange static_chunk(std::uint64_t count, unsigned workers, unsigned worker) noexcept {
    const std::uint64_t base = count / workers;
    const std::uint64_t extra = count % workers;
    const std::uint64_t begin = worker * base + std::min<std::uint64_t>(worker, extra);
    return {begin, begin + base + (worker < extra ? 1 : 0)};
}

/// Runs body(worker, begin, end) for each static chunk, worker 0 on the
/// calling thread. The first exception thrown by any worker is rethrown.
template <typename Body>
void parallel_for_chunks(std::uint64_t count, unsigned workers, Body &&body) {
    workers = std::max(1u, workers);
    if (workers == 1 || count <= 1) {
        body(0u, std::uint64_t{0}, count);
        return;
    }
    std::vector<std::exception_ptr> errors(workers);
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers - 1);
        for (unsigned w = 1; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    const auto r = static_chunk(count, workers, w);
                    body(w, r.begin, r.end);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
        try {
            const auto r = static_chunk(count, workers, 0);
            body(0u, r.begin, r.end);
        } catch (...) {
            errors[0] = std::current_exception();
        }
    }
    for (auto &e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

}  // namespace pauli_lre
