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

#include "minislot/montecarlo.hpp"

#include <cmath>

namespace minislot {

namespace {
std::atomic<unsigned> g_workers{0};
}

void set_worker_count(unsigned n) { g_workers = n; }

unsigned worker_count()
{
    const unsigned n = g_workers.load();
    if (n != 0)
        return n;
    return std::max(1u, std::thread::hardware_concurrency());
}

double pairwise_sum(std::span<const double> x)
{
    if (x.size() <= 64) {
        double s = 0.0;
        for (double v : x)
            s += v;
        return s;
    }
    const std::size_t half = x.size() / 2;
    return pairwise_sum(x.first(half)) + pairwise_sum(x.subspan(half));
}

MomentSummary summarize(std::span<const double> x)
{
    MomentSummary s;
    s.n = x.size();
    if (s.n == 0)
        return s;
    const double n = static_cast<double>(s.n);
    s.mean = pairwise_sum(x) / n;
    if (s.n < 2)
        return s;

    std::vector<double> d2(s.n), d4(s.n);
    for (std::size_t i = 0; i < s.n; ++i) {
        const double d = x[i] - s.mean;
        d2[i] = d * d;
        d4[i] = d2[i] * d2[i];
    }
    const double m2 = pairwise_sum(d2) / n;
    const double m4 = pairwise_sum(d4) / n;
    s.variance = m2 * n / (n - 1.0);
    s.stderrMean = std::sqrt(s.variance / n);
    s.stderrVariance = std::sqrt(std::max(0.0, m4 - m2 * m2) / n);
    return s;
}

} // namespace minislot
