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

#include "minislot/modem.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <limits>

namespace minislot {

CMatrix differential_encode(const CMatrix& v, Scheme scheme)
{
    require(scheme != Scheme::PA, "differential encoding needs FDDi or TDDi");
    for (Eigen::Index i = 0; i < v.size(); ++i)
        require(std::abs(std::abs(v(i)) - 1.0) <= 1e-9, "differential input symbols must have unit modulus");

    if (scheme == Scheme::FDDi) {
        CMatrix d(v.rows() + 1, v.cols());
        d.row(0).setOnes();
        for (Eigen::Index k = 1; k < d.rows(); ++k)
            d.row(k) = v.row(k - 1).cwiseProduct(d.row(k - 1));
        return d;
    }
    CMatrix d(v.rows(), v.cols() + 1);
    d.col(0).setOnes();
    for (Eigen::Index t = 1; t < d.cols(); ++t)
        d.col(t) = v.col(t - 1).cwiseProduct(d.col(t - 1));
    return d;
}

CVector unitary_dft(const CVector& x)
{
    Eigen::FFT<double> fft;
    CVector out;
    fft.fwd(out, x);
    return out / std::sqrt(static_cast<double>(x.size()));
}

CVector unitary_idft(const CVector& x)
{
    Eigen::FFT<double> fft;
    CVector out;
    fft.inv(out, x);
    return out * std::sqrt(static_cast<double>(x.size()));
}

CMatrix noise_grid(int K, int T, double noiseVar, Rng& rng)
{
    require(noiseVar >= 0.0, "noise variance must be >= 0");
    CMatrix W(K, T);
    for (int t = 0; t < T; ++t)
        for (int k = 0; k < K; ++k)
            W(k, t) = complex_normal(rng, noiseVar);
    return W;
}

RxGrid ofdm_time_domain_chain(const CMatrix& d, const ChannelGrid& channel, double noiseVar,
                              std::uint64_t seed)
{
    const int K = static_cast<int>(d.rows());
    const int T = static_cast<int>(d.cols());
    const int L = static_cast<int>(channel.taps.rows());
    require(K >= 2 && (K & (K - 1)) == 0, "time-domain chain needs a power-of-two K");
    require(L < K, "path count must be strictly less than K");
    require(channel.taps.cols() == T, "channel and symbol grids disagree on T");

    Rng rng(seed);
    const CMatrix W = noise_grid(K, T, noiseVar, rng);

    RxGrid rx{CMatrix(K, T), noiseVar};
    const int cp = L;
    std::vector<cx> tx(static_cast<std::size_t>(K + cp));
    for (int t = 0; t < T; ++t) {
        const CVector s = unitary_idft(d.col(t));
        for (int i = -cp; i < K; ++i)
            tx[static_cast<std::size_t>(i + cp)] = s((i + K) % K);

        CVector r = unitary_idft(W.col(t));
        for (int i = 0; i < K; ++i)
            for (int l = 0; l < L; ++l)
                r(i) += channel.taps(l, t) * tx[static_cast<std::size_t>(i - l + cp)];
        rx.z.col(t) = unitary_dft(r);
    }
    return rx;
}

RxGrid fast_rx(const CMatrix& d, const ChannelGrid& channel, double noiseVar, Rng& rng)
{
    require(d.rows() == channel.H.rows() && d.cols() == channel.H.cols(),
            "symbol grid and channel grid dimensions differ");
    RxGrid rx{channel.H.cwiseProduct(d), noiseVar};
    rx.z += noise_grid(static_cast<int>(d.rows()), static_cast<int>(d.cols()), noiseVar, rng);
    return rx;
}

RxGrid fast_rx(const CMatrix& d, const ChannelGrid& channel, double noiseVar, std::uint64_t seed)
{
    Rng rng(seed);
    return fast_rx(d, channel, noiseVar, rng);
}

int nearest_phase_index(cx a, int M)
{
    if (a == cx{0.0, 0.0})
        return 0;
    const double phase = std::arg(a);
    int best = 0;
    double bestDist = std::numeric_limits<double>::infinity();
    for (int m = 0; m < M; ++m) {
        double diff = std::remainder(phase - 2.0 * kPi * m / M, 2.0 * kPi);
        diff = std::abs(diff);
        if (diff < bestDist) {
            bestDist = diff;
            best = m;
        }
    }
    return best;
}

DiffDecision differential_detect(const RxGrid& rx, Scheme scheme, int M)
{
    require(scheme != Scheme::PA, "differential detection needs FDDi or TDDi");
    require(M >= 2, "PSK order must be >= 2");
    const CMatrix& z = rx.z;
    DiffDecision out;
    if (scheme == Scheme::FDDi) {
        out.a = z.bottomRows(z.rows() - 1).cwiseProduct(z.topRows(z.rows() - 1).conjugate());
    } else {
        out.a = z.rightCols(z.cols() - 1).cwiseProduct(z.leftCols(z.cols() - 1).conjugate());
    }
    out.hard.resize(out.a.rows(), out.a.cols());
    for (Eigen::Index i = 0; i < out.a.size(); ++i)
        out.hard(i) = nearest_phase_index(out.a(i), M);
    return out;
}

IMatrix coherent_detect(const RxGrid& rx, const CMatrix& Hhat, const Constellation& constellation)
{
    require(rx.z.rows() == Hhat.rows() && rx.z.cols() == Hhat.cols(),
            "estimate and received grids differ in size");
    const auto& pts = constellation.points();
    IMatrix out(rx.z.rows(), rx.z.cols());
    for (Eigen::Index i = 0; i < rx.z.size(); ++i) {
        if (Hhat(i) == cx{0.0, 0.0})
            throw NumericalError("degenerate channel estimate (zero) at a data position");
        const cx y = rx.z(i) / Hhat(i);
        int best = 0;
        double bestDist = std::numeric_limits<double>::infinity();
        for (std::size_t m = 0; m < pts.size(); ++m) {
            const double dist = std::norm(y - pts[m]);
            if (dist < bestDist) {
                bestDist = dist;
                best = static_cast<int>(m);
            }
        }
        out(i) = best;
    }
    return out;
}

} // namespace minislot
