// SPDX-License-Identifier: Apache-2.0
//
// minislot: finite-blocklength link evaluation for mini-slot OFDM
// Copyright (C) 2026 The minislot authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include "minislot/common.hpp"

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <span>
#include <thread>
#include <vector>

namespace minislot {

// Samples per substream. Fixed so results do not depend on the worker count.
inline constexpr std::size_t kChunkSize = 1u << 14;

// 0 selects std::thread::hardware_concurrency().
void set_worker_count(unsigned n);
unsigned worker_count();

struct MomentSummary {
    std::size_t n = 0;
    double mean = 0.0;
    double variance = 0.0;        // unbiased sample variance
    double stderrMean = 0.0;
    double stderrVariance = 0.0;  // asymptotic, from the fourth central moment
};

double pairwise_sum(std::span<const double> x);
MomentSummary summarize(std::span<const double> x);

// Runs body(chunkIndex, begin, end) over [0, n) in kChunkSize pieces on the
// worker pool. Chunks are independent; callers write disjoint output ranges.
template <class Body>
void parallel_chunks(std::size_t n, Body&& body)
{
    const std::size_t chunks = (n + kChunkSize - 1) / kChunkSize;
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(worker_count(), chunks));
    std::atomic<std::size_t> next{0};
    auto run = [&] {
        for (std::size_t c = next++; c < chunks; c = next++) {
            const std::size_t begin = c * kChunkSize;
            body(c, begin, std::min(n, begin + kChunkSize));
        }
    };
    if (workers <= 1) {
        run();
        return;
    }
    std::vector<std::jthread> pool;
    pool.reserve(workers - 1);
    for (unsigned w = 1; w < workers; ++w)
        pool.emplace_back(run);
    run();
}

// n draws of draw(rng); chunk c uses the substream derive_seed(seed, c).
template <class Draw>
std::vector<double> draw_samples(std::size_t n, std::uint64_t seed, const Draw& draw)
{
    std::vector<double> out(n);
    parallel_chunks(n, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
        Draw local = draw;
        Rng rng(derive_seed(seed, chunk));
        for (std::size_t i = begin; i < end; ++i)
            out[i] = local(rng);
    });
    return out;
}

} // namespace minislot
