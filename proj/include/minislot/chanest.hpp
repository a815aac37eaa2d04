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

#include "minislot/channel.hpp"
#include "minislot/grid.hpp"
#include "minislot/modem.hpp"
#include "minislot/montecarlo.hpp"

#include <cstdint>

namespace minislot {

// Channel autocorrelation across the pilot subcarriers of one symbol,
// R(i, j) = rho_f((i - j) deltaSub), and its (nonnegative) eigenvalues.
struct PilotCovariance {
    CMatrix R;
    RVector eigenvalues;

    int size() const { return static_cast<int>(R.rows()); }
};

PilotCovariance pilot_covariance(const PowerDelayProfile& pdp, int K, int deltaSub);

// R (R + I / gamma)^-1, applied to LS estimates by lmmse_estimate.
CMatrix lmmse_filter(const PilotCovariance& cov, double gamma);
CVector lmmse_estimate(const CVector& ls, const PilotCovariance& cov, double gamma);

// Full-symbol estimate from pilot estimates: linear interpolation between
// pilots, two-pilot extrapolation past the last one. Output length
// lambda_p * deltaSub.
CVector interpolate_linear(const CVector& pilots, int deltaSub);

// Closed-form MSE components. They model pilot errors as white with
// variance phiLmmse and independent of the channel.
double phi_lmmse(const PilotCovariance& cov, double gamma);
double phi_linear(const PowerDelayProfile& pdp, int K, int deltaSub, double phiLmmse);
double phi_edge(const PowerDelayProfile& pdp, int K, int deltaSub, double phiLmmse);
double phi_region_a(const DopplerSpec& doppler, int deltaSym, double phiLmmse);
double phi_region_b(const PowerDelayProfile& pdp, const DopplerSpec& doppler, int K, int deltaSub,
                    int deltaSym, double phiLmmse);

struct MseComponents {
    double lmmse = 0.0;
    double linear = 0.0;
    double edge = 0.0;
    double regionA = 0.0;
    double regionB = 0.0;
};

struct MseBreakdown {
    double phiLmmse = 0.0;
    double phiLinear = 0.0;
    double phiEdge = 0.0;
    double phiA = 0.0;
    double phiB = 0.0;
    double sigmaE2 = 0.0;      // edge folded into linear
    double sigmaE2Full = 0.0;  // separate edge weight, diagnostic
};

// Weighted average over one pilot-symbol period of K x deltaSym elements.
MseBreakdown average_mse(const MiniSlotGrid& grid, const MseComponents& c);

// Every component for a PA grid at SNR gamma (linear).
MseBreakdown analyze_mse(const MiniSlotGrid& grid, const PowerDelayProfile& pdp,
                         const DopplerSpec& doppler, double gamma);

// (1 - sigmaE2) / (sigmaE2 + sigmaW2); NumericalError when sigmaE2 >= 1.
double effective_snr(double sigmaE2, double sigmaW2);

// Same quantity written as gamma (1 - sigmaE2) / (gamma sigmaE2 + 1); exact
// (returns gamma) at sigmaE2 = 0.
double effective_snr_at(double sigmaE2, double gamma);

inline constexpr cx kPilotSymbol{1.0, 0.0};

// LMMSE + interpolation on every pilot symbol; other symbols reuse the
// estimate of the closest preceding pilot symbol.
class PaEstimator {
public:
    PaEstimator(const MiniSlotGrid& grid, const PowerDelayProfile& pdp, double gamma);

    CMatrix operator()(const RxGrid& rx) const;

private:
    MiniSlotGrid grid_;
    CMatrix filter_;
};

// Per-class empirical MSE of PaEstimator, one mean per realization then
// summarized across realizations.
struct EmpiricalMse {
    MomentSummary lmmse;
    MomentSummary linear;
    MomentSummary edge;
    MomentSummary regionA;
    MomentSummary regionB;
    MomentSummary sigmaE2;  // every resource element of the grid
};

EmpiricalMse empirical_mse(const MiniSlotGrid& grid, const PowerDelayProfile& pdp,
                           const DopplerSpec& doppler, double gamma, std::size_t realizations,
                           std::uint64_t seed);

} // namespace minislot
