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

#include "minislot/fbl.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace minislot {

enum class BoundKind { IS, DT };

std::string_view to_string(BoundKind kind);

struct BoundEstimate {
    BoundKind kind = BoundKind::IS;
    double value = 0.0;
    double stdErr = 0.0;
    std::size_t nSamples = 0;
    std::optional<double> log2BetaStar; // IS only
};

// Sum of N i.i.d. per-use draws (bits).
double sample_block_density(const DensitySampler& sampler, int N, Rng& rng);
double sample_block_density(const DensitySampler& sampler, int N, std::uint64_t seed);

// nSamples independent block densities, deterministic in seed.
std::vector<double> block_densities(const DensitySampler& sampler, int N, std::size_t nSamples,
                                    std::uint64_t seed);

// sup_t { P[i_N <= t] - 2^(t - B) } over the empirical law, clamped at 0.
// The supremum of the empirical objective is attained at a sample point,
// so an exact scan over the sorted samples is used.
BoundEstimate is_bound_from_samples(std::vector<double> samples, int B);

// mean of 2^(-[i_N - log2((2^B - 1) / 2)]^+).
BoundEstimate dt_bound_from_samples(std::span<const double> samples, int B);

inline constexpr std::size_t kMinBoundSamples = 100'000;
inline constexpr std::size_t kDefaultBoundSamples = 1'000'000;

BoundEstimate is_lower_bound(const DensitySampler& sampler, int N, int B,
                             std::size_t nSamples = kDefaultBoundSamples, std::uint64_t seed = 1);
BoundEstimate dt_upper_bound(const DensitySampler& sampler, int N, int B,
                             std::size_t nSamples = kDefaultBoundSamples, std::uint64_t seed = 1);

// log2((2^B - 1) / 2) without overflow for large B.
double dt_threshold(int B);

} // namespace minislot
