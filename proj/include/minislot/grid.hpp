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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace minislot {

enum class Scheme { PA, FDDi, TDDi };

std::string_view to_string(Scheme s);
Scheme scheme_from_string(std::string_view name);

// Pilot-carrying OFDM symbols (1-based) with pilots on every deltaSub-th
// subcarrier starting at k = 0. deltaSym is the gap between pilot symbols,
// or T when there is only one.
struct PilotPattern {
    std::vector<int> pilotSymbols;
    int deltaSub = 2;
    int deltaSym = 0;

    bool carries_pilots(int t) const;
};

// Validates ordering and spacing and fills in deltaSym.
PilotPattern make_pattern(std::vector<int> pilotSymbols, int deltaSub, int T);

// 3GPP mini-slot layouts: {1} for T = 2, 4 and low-mobility T = 7;
// {1, 5} for high-mobility T = 7.
PilotPattern standard_pattern(int T, bool highMobility, int deltaSub);

class MiniSlotGrid {
public:
    MiniSlotGrid(int K, int T, std::optional<PilotPattern> pattern = std::nullopt);

    int K() const { return K_; }
    int T() const { return T_; }
    const std::optional<PilotPattern>& pattern() const { return pattern_; }
    const PilotPattern& require_pattern() const;

    // Pilots per pilot-carrying symbol, K / deltaSub.
    int pilots_per_symbol() const;
    int total_pilots() const;

private:
    int K_;
    int T_;
    std::optional<PilotPattern> pattern_;
};

enum class ReClass { Pilot, LinearData, EdgeData, RegionA, RegionB, DiffReference, DiffData };

std::string_view to_string(ReClass c);

// k is 0-based, t is 1-based.
ReClass classify(const MiniSlotGrid& grid, Scheme scheme, int k, int t);

int data_symbol_count(const MiniSlotGrid& grid, Scheme scheme);

enum class Modulation { PSK, QAM };

class Constellation {
public:
    Constellation(Modulation kind, int M);

    static Constellation psk(int M) { return {Modulation::PSK, M}; }
    static Constellation qam(int M) { return {Modulation::QAM, M}; }

    Modulation kind() const { return kind_; }
    int order() const { return M_; }
    double bits_per_symbol() const;
    // Unit average power. PSK point m is exp(j 2 pi m / M); QAM points run
    // over in-phase levels (outer loop) then quadrature levels, ascending.
    const std::vector<cx>& points() const { return points_; }
    std::string name() const;

private:
    Modulation kind_;
    int M_;
    std::vector<cx> points_;
};

Constellation constellation_from_string(std::string_view name);

struct SchemeConfig {
    Scheme scheme;
    Constellation constellation;
    int N;              // data symbols
    int B;              // information bits
    double codingRate;  // B / (N log2 M)

    // Net rate in information bits per data symbol.
    double rate() const { return static_cast<double>(B) / N; }
};

// Same grid, same payload for every scheme; only the code rate differs.
// Throws InfeasiblePayload when a scheme cannot carry B bits uncoded.
std::vector<SchemeConfig> match_coding_rates(int B, const MiniSlotGrid& grid,
                                             const std::vector<std::pair<Scheme, Constellation>>& schemes);

} // namespace minislot
