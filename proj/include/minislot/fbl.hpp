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

#include "minislot/chanest.hpp"
#include "minislot/channel.hpp"
#include "minislot/grid.hpp"
#include "minislot/montecarlo.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace minislot {

struct CapacityDispersion {
    double C = 0.0;
    double V = 0.0;
};

// Complex AWGN: C = log2(1 + gamma), V = gamma (2 + gamma) / (1 + gamma)^2.
CapacityDispersion awgn_capacity_dispersion(double gamma);

// Standard Gaussian tail.
double q_function(double x);

// Q(sqrt(N / V) (I - R + log2(N) / (2N))). V = 0 degenerates to a step.
double normal_approx_bler(double I, double V, int N, double R);

// Equivalent real 4-D channel of one differential use. rho is the real
// correlation between the two channel coefficients.
struct DiffChannelParams {
    double gamma = 1.0;
    double rho = 1.0;
    int M = 4;
};

// log p(z | deltaPhi) for z = (x1, y1, x2, y2), natural log.
double diff_transition_logpdf(const std::array<double, 4>& z, double deltaPhi, const DiffChannelParams& p);

// One information-density draw (bits) under deltaPhi = 0, normalized by
// the uniform mixture over the M phase differences.
class DiffDensitySampler {
public:
    explicit DiffDensitySampler(const DiffChannelParams& p);

    double operator()(Rng& rng) const;
    const DiffChannelParams& params() const { return p_; }
    double log2_alphabet() const { return std::log2(static_cast<double>(p_.M)); }

private:
    DiffChannelParams p_;
    double c_;              // gamma^2 rho / (1 + 2 gamma + gamma^2 (1 - rho^2))
    double a_, b_;          // Cholesky coefficients of the deltaPhi = 0 covariance
    std::vector<double> cos_, sin_;
};

// One information-density draw for coherent detection of an i.i.d.
// constellation input over h ~ CN(0, 1) at SNR gammaHat.
class CoherentDensitySampler {
public:
    CoherentDensitySampler(double gammaHat, Constellation constellation);

    double operator()(Rng& rng) const;
    double gamma_hat() const { return gammaHat_; }
    double log2_alphabet() const { return constellation_.bits_per_symbol(); }

private:
    double gammaHat_;
    double amp_;
    Constellation constellation_;
};

// Arbitrary per-use law, mainly for tests and what-if studies.
struct CustomDensity {
    std::function<double(Rng&)> draw;
    double bits = 0.0;

    double operator()(Rng& rng) const { return draw(rng); }
    double log2_alphabet() const { return bits; }
};

// Per-use density of any scheme; i.i.d. across calls.
class DensitySampler {
public:
    DensitySampler(DiffDensitySampler s) : impl_(std::move(s)) {}
    DensitySampler(CoherentDensitySampler s) : impl_(std::move(s)) {}
    DensitySampler(CustomDensity s) : impl_(std::move(s)) {}

    double operator()(Rng& rng) const
    {
        return std::visit([&](const auto& s) { return s(rng); }, impl_);
    }
    double log2_alphabet() const
    {
        return std::visit([](const auto& s) { return s.log2_alphabet(); }, impl_);
    }

private:
    std::variant<DiffDensitySampler, CoherentDensitySampler, CustomDensity> impl_;
};

struct InfoEstimate {
    double I = 0.0;
    double V = 0.0;
    double stderrI = 0.0;
    double stderrV = 0.0;
    std::size_t nSamples = 0;
};

InfoEstimate estimate_information(const DensitySampler& sampler, std::size_t nSamples, std::uint64_t seed);
InfoEstimate diff_capacity_dispersion(const DiffChannelParams& p, std::size_t nSamples, std::uint64_t seed);
InfoEstimate coherent_capacity_dispersion(double gammaHat, const Constellation& constellation,
                                          std::size_t nSamples, std::uint64_t seed);

// Everything scheme-specific that feeds the information-density model.
struct SchemeChannel {
    Scheme scheme;
    int N = 0;
    DensitySampler sampler;
    cx rho{1.0, 0.0};                     // differential schemes: adjacent correlation
    std::optional<MseBreakdown> mse;      // PA only
    double gammaHat = 0.0;                // PA only
    std::optional<std::string> warning;   // model-fidelity note
};

SchemeChannel scheme_channel(Scheme scheme, const MiniSlotGrid& grid, const PowerDelayProfile& pdp,
                             const DopplerSpec& doppler, double gamma, const Constellation& constellation);

struct FblResult {
    Scheme scheme;
    int N = 0;
    double R = 0.0;
    double I = 0.0;
    double V = 0.0;
    double stderrI = 0.0;
    double stderrV = 0.0;
    double epsilon = 1.0;
    std::size_t nSamples = 0;
    std::optional<double> sigmaE2;
    std::optional<double> gammaHat;
    std::optional<std::string> warning;
};

inline constexpr std::size_t kDefaultInfoSamples = 1'000'000;

// Normal-approximation BLER of one scheme carrying B bits on the grid.
// Throws InfeasiblePayload when B / N exceeds log2 M.
FblResult scheme_fbl(Scheme scheme, const MiniSlotGrid& grid, const PowerDelayProfile& pdp,
                     const DopplerSpec& doppler, double gamma, int B, const Constellation& constellation,
                     std::size_t nSamples = kDefaultInfoSamples, std::uint64_t seed = 1);

// Seed streams; shared by every sweep point so curves use common random numbers.
inline constexpr std::uint64_t kDiffDensityStream = 0xd1ffULL;
inline constexpr std::uint64_t kCoherentDensityStream = 0xc0feULL;

} // namespace minislot
