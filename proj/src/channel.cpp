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

#include "minislot/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace minislot {

PowerDelayProfile::PowerDelayProfile(std::vector<double> powers)
    : taps_(std::move(powers))
{
    require(!taps_.empty(), "power delay profile needs at least one tap");
    double sum = 0.0;
    for (double p : taps_) {
        require(p > 0.0 && std::isfinite(p), "tap powers must be positive and finite");
        sum += p;
    }
    require(std::abs(sum - 1.0) <= 1e-12, "tap powers must sum to one");
}

PowerDelayProfile PowerDelayProfile::normalized(std::vector<double> powers)
{
    require(!powers.empty(), "power delay profile needs at least one tap");
    const double sum = std::accumulate(powers.begin(), powers.end(), 0.0);
    require(sum > 0.0 && std::isfinite(sum), "tap powers must be positive and finite");
    for (double& p : powers)
        p /= sum;
    // Absorb the last rounding error into the largest tap.
    const double residual = 1.0 - std::accumulate(powers.begin(), powers.end(), 0.0);
    *std::max_element(powers.begin(), powers.end()) += residual;
    return PowerDelayProfile(std::move(powers));
}

DopplerSpec::DopplerSpec(double v)
    : fdTs(v)
{
    require(v >= 0.0 && std::isfinite(v), "normalized Doppler must be finite and >= 0");
}

double bessel_j0(double x)
{
    x = std::abs(x);
    if (x > 12.0)
        return std::cyl_bessel_j(0.0, x);
    const double q = -(x * x) / 4.0;
    double term = 1.0;
    double sum = 1.0;
    for (int m = 1; m < 200; ++m) {
        term *= q / (static_cast<double>(m) * static_cast<double>(m));
        sum += term;
        if (std::abs(term) < 1e-15 * std::max(1.0, std::abs(sum)))
            break;
    }
    return sum;
}

double time_correlation(int deltaT, const DopplerSpec& doppler)
{
    return bessel_j0(2.0 * kPi * doppler.fdTs * std::abs(deltaT));
}

cx freq_correlation(int deltaK, const PowerDelayProfile& pdp, int K)
{
    require(K >= 2, "subcarrier count must be >= 2");
    cx acc{0.0, 0.0};
    for (int l = 0; l < pdp.size(); ++l) {
        // Reduce l * dk mod K first so the phase argument stays small.
        const long long r = (static_cast<long long>(l) * deltaK) % K;
        acc += pdp[l] * std::polar(1.0, -2.0 * kPi * static_cast<double>(r) / K);
    }
    return acc;
}

cx time_freq_correlation(int deltaK, int deltaT, const PowerDelayProfile& pdp,
                         const DopplerSpec& doppler, int K)
{
    return time_correlation(deltaT, doppler) * freq_correlation(deltaK, pdp, K);
}

PowerDelayProfile exponential_pdp(int L, double decay)
{
    require(L >= 1, "path count must be >= 1");
    require(decay >= 0.0 && std::isfinite(decay), "decay must be finite and >= 0");
    std::vector<double> p(static_cast<std::size_t>(L));
    for (int l = 0; l < L; ++l)
        p[static_cast<std::size_t>(l)] = std::exp(-decay * l);
    return PowerDelayProfile::normalized(std::move(p));
}

RMatrix jakes_covariance(const DopplerSpec& doppler, int T)
{
    require(T >= 1, "symbol count must be >= 1");
    RMatrix C(T, T);
    for (int i = 0; i < T; ++i)
        for (int j = 0; j < T; ++j)
            C(i, j) = time_correlation(i - j, doppler);
    return C;
}

namespace {

bool semidefinite_cholesky(const RMatrix& C, RMatrix& S)
{
    const Eigen::Index n = C.rows();
    const double scale = std::max(1.0, C.diagonal().cwiseAbs().maxCoeff());
    const double tol = 1e-12 * scale;
    S = RMatrix::Zero(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        double d = C(j, j);
        for (Eigen::Index k = 0; k < j; ++k)
            d -= S(j, k) * S(j, k);
        if (d < -tol)
            return false;
        if (d <= tol)
            continue;
        const double pivot = std::sqrt(d);
        S(j, j) = pivot;
        for (Eigen::Index i = j + 1; i < n; ++i) {
            double v = C(i, j);
            for (Eigen::Index k = 0; k < j; ++k)
                v -= S(i, k) * S(j, k);
            S(i, j) = v / pivot;
        }
    }
    return true;
}

} // namespace

RMatrix correlation_square_root(const RMatrix& C)
{
    require(C.rows() == C.cols(), "correlation matrix must be square");
    RMatrix S;
    if (semidefinite_cholesky(C, S))
        return S;
    RMatrix loaded = C;
    loaded.diagonal().array() += 1e-12;
    if (semidefinite_cholesky(loaded, S))
        return S;
    throw NumericalError("time-correlation matrix is not positive semidefinite");
}

namespace {

CMatrix dft_twiddles(int K, int L)
{
    CMatrix W(K, L);
    for (int k = 0; k < K; ++k)
        for (int l = 0; l < L; ++l) {
            const long long r = (static_cast<long long>(k) * l) % K;
            W(k, l) = std::polar(1.0, -2.0 * kPi * static_cast<double>(r) / K);
        }
    return W;
}

} // namespace

CMatrix frequency_response(const CMatrix& taps, int K)
{
    require(K >= 2, "subcarrier count must be >= 2");
    return dft_twiddles(K, static_cast<int>(taps.rows())) * taps;
}

ChannelSampler::ChannelSampler(PowerDelayProfile pdp, DopplerSpec doppler, int K, int T)
    : pdp_(std::move(pdp))
    , doppler_(doppler)
    , K_(K)
    , T_(T)
{
    require(T >= 1, "symbol count must be >= 1");
    require(K > pdp_.size(), "path count must be strictly less than the subcarrier count");
    sqrtTime_ = correlation_square_root(jakes_covariance(doppler_, T_));
    twiddle_ = dft_twiddles(K_, pdp_.size());
}

ChannelGrid ChannelSampler::operator()(Rng& rng) const
{
    const int L = pdp_.size();
    CMatrix white(T_, L);
    for (int l = 0; l < L; ++l)
        for (int t = 0; t < T_; ++t)
            white(t, l) = complex_normal(rng);

    ChannelGrid g;
    g.taps = (sqrtTime_.cast<cx>() * white).transpose();
    for (int l = 0; l < L; ++l)
        g.taps.row(l) *= std::sqrt(pdp_[l]);
    g.H = twiddle_ * g.taps;
    return g;
}

ChannelGrid sample_channel_grid(const PowerDelayProfile& pdp, const DopplerSpec& doppler,
                                int K, int T, Rng& rng)
{
    return ChannelSampler(pdp, doppler, K, T)(rng);
}

ChannelGrid sample_channel_grid(const PowerDelayProfile& pdp, const DopplerSpec& doppler,
                                int K, int T, std::uint64_t seed)
{
    Rng rng(seed);
    return sample_channel_grid(pdp, doppler, K, T, rng);
}

} // namespace minislot
