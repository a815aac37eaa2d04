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

#include <cstdint>

namespace minislot {

using IMatrix = Eigen::MatrixXi;

struct RxGrid {
    CMatrix z;  // K x T received subcarrier samples
    double noiseVar = 0.0;
};

struct DiffDecision {
    CMatrix a;     // detection statistics, shaped like the encoder input
    IMatrix hard;  // decided phase indices in [0, M)
};

// v is (K-1) x T for FDDi or K x (T-1) for TDDi, unit-modulus entries.
// Returns the K x T grid with reference row/column 0 set to 1.
CMatrix differential_encode(const CMatrix& v, Scheme scheme);

// Unitary K-point transforms (1/sqrt(K) both ways).
CVector unitary_dft(const CVector& x);
CVector unitary_idft(const CVector& x);

// K x T white noise, E|W|^2 = noiseVar, drawn in the frequency domain.
CMatrix noise_grid(int K, int T, double noiseVar, Rng& rng);

// IDFT, cyclic prefix of length L, per-symbol tap convolution, CP removal,
// DFT. The noise is noise_grid(seed) mapped to the time domain, so a call
// with the same seed as fast_rx sees the same noise realization.
RxGrid ofdm_time_domain_chain(const CMatrix& d, const ChannelGrid& channel, double noiseVar,
                              std::uint64_t seed);

// z = H .* d + W with W = noise_grid(seed).
RxGrid fast_rx(const CMatrix& d, const ChannelGrid& channel, double noiseVar, std::uint64_t seed);
RxGrid fast_rx(const CMatrix& d, const ChannelGrid& channel, double noiseVar, Rng& rng);

// Nearest M-PSK phase index of arg(a); exact ties and a = 0 resolve to the
// lowest index.
int nearest_phase_index(cx a, int M);

DiffDecision differential_detect(const RxGrid& rx, Scheme scheme, int M);

// Minimum-distance decision on z / Hhat per element; ties go to the lowest
// constellation index. A zero estimate throws NumericalError.
IMatrix coherent_detect(const RxGrid& rx, const CMatrix& Hhat, const Constellation& constellation);

} // namespace minislot
