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

#include <cstdint>
#include <vector>

namespace minislot {

// Per-path powers of a tapped-delay-line Rayleigh channel, summing to one.
// Tap l sits at delay l (in samples), l = 0..L-1.
class PowerDelayProfile {
public:
    // Throws InvalidArgument unless every power is positive and they sum to 1.
    explicit PowerDelayProfile(std::vector<double> powers);

    // Rescales arbitrary positive powers to unit sum.
    static PowerDelayProfile normalized(std::vector<double> powers);

    const std::vector<double>& taps() const { return taps_; }
    int size() const { return static_cast<int>(taps_.size()); }
    double operator[](int l) const { return taps_[static_cast<std::size_t>(l)]; }

private:
    std::vector<double> taps_;
};

// Normalized Doppler f_d * T_s, per OFDM-symbol period.
struct DopplerSpec {
    double fdTs = 0.0;

    explicit DopplerSpec(double v = 0.0);
};

struct ChannelGrid {
    CMatrix H;     // K x T frequency response
    CMatrix taps;  // L x T tap gains h_t(l)

    int K() const { return static_cast<int>(H.rows()); }
    int T() const { return static_cast<int>(H.cols()); }
};

// J_0(x). Power series for |x| <= 12, libstdc++ cyl_bessel_j beyond.
double bessel_j0(double x);

// J_0(2 pi fdTs |dt|).
double time_correlation(int deltaT, const DopplerSpec& doppler);

// sum_l sigma_l^2 exp(-j 2 pi l dk / K).
cx freq_correlation(int deltaK, const PowerDelayProfile& pdp, int K);

cx time_freq_correlation(int deltaK, int deltaT, const PowerDelayProfile& pdp,
                         const DopplerSpec& doppler, int K);

PowerDelayProfile exponential_pdp(int L, double decay = 1.0);

// T x T matrix [J_0(2 pi fdTs |i - j|)].
RMatrix jakes_covariance(const DopplerSpec& doppler, int T);

// Lower-triangular S with S S^T = C for a PSD matrix C. Zero pivots (within
// 1e-12 relative) yield zero columns, so rank-deficient C such as the
// static-channel all-ones matrix factor exactly. A negative pivot triggers
// one retry with 1e-12 diagonal loading; failing that, NumericalError.
RMatrix correlation_square_root(const RMatrix& C);

// H_{k,t} = sum_l h_t(l) exp(-j 2 pi k l / K).
CMatrix frequency_response(const CMatrix& taps, int K);

ChannelGrid sample_channel_grid(const PowerDelayProfile& pdp, const DopplerSpec& doppler,
                                int K, int T, Rng& rng);
ChannelGrid sample_channel_grid(const PowerDelayProfile& pdp, const DopplerSpec& doppler,
                                int K, int T, std::uint64_t seed);

// Reusable sampler: caches the time-correlation square root and DFT twiddles.
class ChannelSampler {
public:
    ChannelSampler(PowerDelayProfile pdp, DopplerSpec doppler, int K, int T);

    ChannelGrid operator()(Rng& rng) const;

    const PowerDelayProfile& pdp() const { return pdp_; }
    int K() const { return K_; }
    int T() const { return T_; }

private:
    PowerDelayProfile pdp_;
    DopplerSpec doppler_;
    int K_;
    int T_;
    RMatrix sqrtTime_;
    CMatrix twiddle_;  // K x L
};

} // namespace minislot
