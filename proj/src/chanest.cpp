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

#include "minislot/chanest.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <array>
#include <cmath>

namespace minislot {

PilotCovariance pilot_covariance(const PowerDelayProfile& pdp, int K, int deltaSub)
{
    require(deltaSub >= 1 && K % deltaSub == 0, "pilot spacing must divide K");
    const int lp = K / deltaSub;
    PilotCovariance cov;
    cov.R.resize(lp, lp);
    for (int i = 0; i < lp; ++i)
        for (int j = 0; j < lp; ++j)
            cov.R(i, j) = freq_correlation((i - j) * deltaSub, pdp, K);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(cov.R, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw NumericalError("eigendecomposition of the pilot covariance failed");
    cov.eigenvalues = es.eigenvalues().cwiseMax(0.0);
    return cov;
}

CMatrix lmmse_filter(const PilotCovariance& cov, double gamma)
{
    require(gamma > 0.0, "SNR must be positive");
    CMatrix A = cov.R;
    A.diagonal().array() += 1.0 / gamma;
    // R A^-1 = (A^-1 R)^H since both are Hermitian.
    return A.ldlt().solve(cov.R).adjoint();
}

CVector lmmse_estimate(const CVector& ls, const PilotCovariance& cov, double gamma)
{
    require(ls.size() == cov.size(), "LS vector length must equal the pilot count");
    require(gamma > 0.0, "SNR must be positive");
    CMatrix A = cov.R;
    A.diagonal().array() += 1.0 / gamma;
    return cov.R * A.ldlt().solve(ls);
}

CVector interpolate_linear(const CVector& pilots, int deltaSub)
{
    const auto lp = pilots.size();
    require(lp >= 2, "interpolation needs at least two pilots");
    require(deltaSub >= 1, "pilot spacing must be >= 1");
    const double d = deltaSub;
    CVector out(lp * deltaSub);
    for (Eigen::Index p = 0; p + 1 < lp; ++p) {
        out(p * deltaSub) = pilots(p);
        for (int kd = 1; kd < deltaSub; ++kd)
            out(p * deltaSub + kd) = ((d - kd) / d) * pilots(p) + (kd / d) * pilots(p + 1);
    }
    const Eigen::Index last = (lp - 1) * deltaSub;
    out(last) = pilots(lp - 1);
    for (int kd = 1; kd < deltaSub; ++kd)
        out(last + kd) = (-kd / d) * pilots(lp - 2) + ((d + kd) / d) * pilots(lp - 1);
    return out;
}

double phi_lmmse(const PilotCovariance& cov, double gamma)
{
    require(gamma > 0.0, "SNR must be positive");
    double acc = 0.0;
    for (Eigen::Index i = 0; i < cov.eigenvalues.size(); ++i) {
        const double psi = cov.eigenvalues(i);
        acc += psi / (gamma * psi + 1.0);
    }
    return acc / static_cast<double>(cov.size());
}

namespace {

// Constant term shared by the interpolated-position MSEs.
double interpolation_offset(const PowerDelayProfile& pdp, int K, int deltaSub, double phiLmmse)
{
    const double d = deltaSub;
    return (5.0 * d - 1.0) / (3.0 * d) + (d + 1.0) / (3.0 * d) * freq_correlation(deltaSub, pdp, K).real()
        + (2.0 * d - 1.0) / (3.0 * d) * phiLmmse;
}

} // namespace

double phi_linear(const PowerDelayProfile& pdp, int K, int deltaSub, double phiLmmse)
{
    require(deltaSub >= 1, "pilot spacing must be >= 1");
    if (deltaSub == 1)
        return 0.0;
    const double d = deltaSub;
    double s = 0.0;
    for (int kd = 1; kd < deltaSub; ++kd)
        s += (d - kd) / d * freq_correlation(kd, pdp, K).real()
            + kd / d * freq_correlation(kd - deltaSub, pdp, K).real();
    return interpolation_offset(pdp, K, deltaSub, phiLmmse) - 2.0 / (d - 1.0) * s;
}

double phi_edge(const PowerDelayProfile& pdp, int K, int deltaSub, double phiLmmse)
{
    require(deltaSub >= 1, "pilot spacing must be >= 1");
    if (deltaSub == 1)
        return 0.0;
    const double d = deltaSub;
    const double r_d = freq_correlation(deltaSub, pdp, K).real();
    double s = 0.0;
    for (int kd = 1; kd < deltaSub; ++kd) {
        const double a = -kd / d;
        const double b = (d + kd) / d;
        s += 1.0 + a * a + b * b + 2.0 * a * b * r_d
            - 2.0 * a * freq_correlation(deltaSub + kd, pdp, K).real()
            - 2.0 * b * freq_correlation(kd, pdp, K).real() + (a * a + b * b) * phiLmmse;
    }
    return s / (d - 1.0);
}

double phi_region_a(const DopplerSpec& doppler, int deltaSym, double phiLmmse)
{
    require(deltaSym >= 1, "pilot symbol interval must be >= 1");
    if (deltaSym == 1)
        return phiLmmse;
    double s = 0.0;
    for (int dt = 1; dt < deltaSym; ++dt)
        s += time_correlation(dt, doppler);
    return 2.0 + phiLmmse - 2.0 / (deltaSym - 1.0) * s;
}

double phi_region_b(const PowerDelayProfile& pdp, const DopplerSpec& doppler, int K, int deltaSub,
                    int deltaSym, double phiLmmse)
{
    require(deltaSym >= 1 && deltaSub >= 1, "pilot intervals must be >= 1");
    if (deltaSym == 1)
        return phi_linear(pdp, K, deltaSub, phiLmmse);
    if (deltaSub == 1)
        return phi_region_a(doppler, deltaSym, phiLmmse);
    const double d = deltaSub;
    double s = 0.0;
    for (int dt = 1; dt < deltaSym; ++dt)
        for (int kd = 1; kd < deltaSub; ++kd)
            s += (d - kd) / d * time_freq_correlation(kd, dt, pdp, doppler, K).real()
                + kd / d * time_freq_correlation(kd - deltaSub, dt, pdp, doppler, K).real();
    return interpolation_offset(pdp, K, deltaSub, phiLmmse) - 2.0 / ((deltaSym - 1.0) * (d - 1.0)) * s;
}

MseBreakdown average_mse(const MiniSlotGrid& grid, const MseComponents& c)
{
    const PilotPattern& p = grid.require_pattern();
    const double K = grid.K();
    const double lp = grid.pilots_per_symbol();
    const double ds = p.deltaSym;
    const double edgeCount = p.deltaSub - 1;
    const double denom = K * ds;

    MseBreakdown m{c.lmmse, c.linear, c.edge, c.regionA, c.regionB, 0.0, 0.0};
    const double tail = lp * (ds - 1.0) * c.regionA + (K - lp) * (ds - 1.0) * c.regionB;
    m.sigmaE2 = (lp * c.lmmse + (K - lp) * c.linear + tail) / denom;
    m.sigmaE2Full = (lp * c.lmmse + (K - lp - edgeCount) * c.linear + edgeCount * c.edge + tail) / denom;
    return m;
}

MseBreakdown analyze_mse(const MiniSlotGrid& grid, const PowerDelayProfile& pdp,
                         const DopplerSpec& doppler, double gamma)
{
    const PilotPattern& p = grid.require_pattern();
    const PilotCovariance cov = pilot_covariance(pdp, grid.K(), p.deltaSub);
    MseComponents c;
    c.lmmse = phi_lmmse(cov, gamma);
    c.linear = phi_linear(pdp, grid.K(), p.deltaSub, c.lmmse);
    c.edge = phi_edge(pdp, grid.K(), p.deltaSub, c.lmmse);
    c.regionA = phi_region_a(doppler, p.deltaSym, c.lmmse);
    c.regionB = phi_region_b(pdp, doppler, grid.K(), p.deltaSub, p.deltaSym, c.lmmse);
    return average_mse(grid, c);
}

double effective_snr(double sigmaE2, double sigmaW2)
{
    require(sigmaW2 > 0.0, "noise variance must be positive");
    require(sigmaE2 >= 0.0, "estimation MSE must be >= 0");
    if (sigmaE2 >= 1.0)
        throw NumericalError("channel estimation collapsed (MSE >= channel power)");
    return (1.0 - sigmaE2) / (sigmaE2 + sigmaW2);
}

double effective_snr_at(double sigmaE2, double gamma)
{
    require(gamma > 0.0, "SNR must be positive");
    require(sigmaE2 >= 0.0, "estimation MSE must be >= 0");
    if (sigmaE2 >= 1.0)
        throw NumericalError("channel estimation collapsed (MSE >= channel power)");
    return gamma * (1.0 - sigmaE2) / (gamma * sigmaE2 + 1.0);
}

PaEstimator::PaEstimator(const MiniSlotGrid& grid, const PowerDelayProfile& pdp, double gamma)
    : grid_(grid)
{
    const PilotPattern& p = grid_.require_pattern();
    require(grid_.pilots_per_symbol() >= 2, "estimator needs at least two pilots per symbol");
    filter_ = lmmse_filter(pilot_covariance(pdp, grid_.K(), p.deltaSub), gamma);
}

CMatrix PaEstimator::operator()(const RxGrid& rx) const
{
    const PilotPattern& p = grid_.require_pattern();
    const int K = grid_.K();
    const int T = grid_.T();
    const int lp = grid_.pilots_per_symbol();
    require(rx.z.rows() == K && rx.z.cols() == T, "received grid does not match the mini-slot");

    CMatrix Hhat(K, T);
    for (int tp : p.pilotSymbols) {
        CVector ls(lp);
        for (int i = 0; i < lp; ++i)
            ls(i) = rx.z(i * p.deltaSub, tp - 1) / kPilotSymbol;
        Hhat.col(tp - 1) = interpolate_linear(filter_ * ls, p.deltaSub);
    }
    int source = p.pilotSymbols.front();
    for (int t = 1; t <= T; ++t) {
        if (p.carries_pilots(t)) {
            source = t;
            continue;
        }
        Hhat.col(t - 1) = Hhat.col(source - 1);
    }
    return Hhat;
}

EmpiricalMse empirical_mse(const MiniSlotGrid& grid, const PowerDelayProfile& pdp,
                           const DopplerSpec& doppler, double gamma, std::size_t realizations,
                           std::uint64_t seed)
{
    require(realizations >= 2, "need at least two realizations");
    const int K = grid.K();
    const int T = grid.T();
    const PaEstimator estimator(grid, pdp, gamma);
    const ChannelSampler sampler(pdp, doppler, K, T);

    // Class index for every element, fixed for the grid.
    IMatrix cls(K, T);
    std::array<int, 5> counts{};
    for (int t = 1; t <= T; ++t)
        for (int k = 0; k < K; ++k) {
            int c = 0;
            switch (classify(grid, Scheme::PA, k, t)) {
            case ReClass::Pilot: c = 0; break;
            case ReClass::LinearData: c = 1; break;
            case ReClass::EdgeData: c = 2; break;
            case ReClass::RegionA: c = 3; break;
            default: c = 4; break;
            }
            cls(k, t - 1) = c;
            ++counts[static_cast<std::size_t>(c)];
        }

    std::array<std::vector<double>, 6> per;
    for (auto& v : per)
        v.assign(realizations, 0.0);
    const CMatrix ones = CMatrix::Constant(K, T, kPilotSymbol);

    parallel_chunks(realizations, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
        Rng rng(derive_seed(seed, chunk));
        for (std::size_t r = begin; r < end; ++r) {
            const ChannelGrid ch = sampler(rng);
            const RxGrid rx = fast_rx(ones, ch, 1.0 / gamma, rng);
            const CMatrix Hhat = estimator(rx);
            std::array<double, 5> sums{};
            double total = 0.0;
            for (int t = 0; t < T; ++t)
                for (int k = 0; k < K; ++k) {
                    const double e = std::norm(Hhat(k, t) - ch.H(k, t));
                    sums[static_cast<std::size_t>(cls(k, t))] += e;
                    total += e;
                }
            for (std::size_t c = 0; c < 5; ++c)
                per[c][r] = counts[c] > 0 ? sums[c] / counts[c] : 0.0;
            per[5][r] = total / (static_cast<double>(K) * T);
        }
    });

    return {summarize(per[0]), summarize(per[1]), summarize(per[2]),
            summarize(per[3]), summarize(per[4]), summarize(per[5])};
}

} // namespace minislot
