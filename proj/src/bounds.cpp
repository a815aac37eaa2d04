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

#include "minislot/bounds.hpp"

#include <algorithm>
#include <cmath>

namespace minislot {

std::string_view to_string(BoundKind kind) { return kind == BoundKind::IS ? "IS" : "DT"; }

double sample_block_density(const DensitySampler& sampler, int N, Rng& rng)
{
    require(N >= 1, "blocklength must be >= 1");
    double s = 0.0;
    for (int n = 0; n < N; ++n)
        s += sampler(rng);
    return s;
}

double sample_block_density(const DensitySampler& sampler, int N, std::uint64_t seed)
{
    Rng rng(seed);
    return sample_block_density(sampler, N, rng);
}

std::vector<double> block_densities(const DensitySampler& sampler, int N, std::size_t nSamples,
                                    std::uint64_t seed)
{
    require(N >= 1, "blocklength must be >= 1");
    require(nSamples >= 1, "need at least one block");
    return draw_samples(nSamples, seed, [&sampler, N](Rng& rng) { return sample_block_density(sampler, N, rng); });
}

double dt_threshold(int B)
{
    require(B >= 1, "payload must be >= 1 bit");
    return (B - 1.0) + std::log1p(-std::exp2(-static_cast<double>(B))) / std::log(2.0);
}

BoundEstimate is_bound_from_samples(std::vector<double> samples, int B)
{
    require(B >= 1, "payload must be >= 1 bit");
    require(!samples.empty(), "no samples");
    std::sort(samples.begin(), samples.end());
    const std::size_t n = samples.size();
    const double dn = static_cast<double>(n);

    BoundEstimate est;
    est.kind = BoundKind::IS;
    est.nSamples = n;
    double best = 0.0;
    double bestP = 0.0;
    std::optional<double> bestT;
    for (std::size_t k = 0; k < n; ++k) {
        // Only the last of a run of ties carries the full step of the CDF.
        if (k + 1 < n && samples[k + 1] == samples[k])
            continue;
        const double p = static_cast<double>(k + 1) / dn;
        const double v = p - std::exp2(samples[k] - B);
        if (v > best) {
            best = v;
            bestP = p;
            bestT = samples[k];
        }
    }
    est.value = best;
    est.stdErr = std::sqrt(bestP * (1.0 - bestP) / dn);
    est.log2BetaStar = bestT;
    return est;
}

BoundEstimate dt_bound_from_samples(std::span<const double> samples, int B)
{
    require(!samples.empty(), "no samples");
    const double thr = dt_threshold(B);
    std::vector<double> terms(samples.size());
    for (std::size_t k = 0; k < samples.size(); ++k)
        terms[k] = std::exp2(-std::max(samples[k] - thr, 0.0));
    const MomentSummary m = summarize(terms);
    BoundEstimate est;
    est.kind = BoundKind::DT;
    est.value = std::clamp(m.mean, 0.0, 1.0);
    est.stdErr = m.stderrMean;
    est.nSamples = m.n;
    return est;
}

BoundEstimate is_lower_bound(const DensitySampler& sampler, int N, int B, std::size_t nSamples, std::uint64_t seed)
{
    require(B >= 1, "payload must be >= 1 bit");
    require(nSamples >= kMinBoundSamples, "IS bound needs at least 1e5 blocks");
    return is_bound_from_samples(block_densities(sampler, N, nSamples, seed), B);
}

BoundEstimate dt_upper_bound(const DensitySampler& sampler, int N, int B, std::size_t nSamples, std::uint64_t seed)
{
    require(B >= 1, "payload must be >= 1 bit");
    require(nSamples >= kMinBoundSamples, "DT bound needs at least 1e5 blocks");
    const std::vector<double> s = block_densities(sampler, N, nSamples, seed);
    return dt_bound_from_samples(s, B);
}

} // namespace minislot
