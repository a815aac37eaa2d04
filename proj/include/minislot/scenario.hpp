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

#include "minislot/bounds.hpp"
#include "minislot/chanest.hpp"
#include "minislot/channel.hpp"
#include "minislot/fbl.hpp"
#include "minislot/grid.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace minislot {

struct PdpSpec {
    int L = 5;
    double decay = 1.0;
};

struct Scenario {
    int K = 64;
    int T = 2;
    int deltaSub = 2;
    bool highMobility = false;
    std::optional<std::vector<int>> pilotSymbols; // overrides the standard layout
    PdpSpec pdp;
    std::vector<double> fdTs{0.01};
    std::vector<double> gammaDb{0.0};
    int B = 64;
    std::map<Scheme, int> M{{Scheme::PA, 4}, {Scheme::FDDi, 4}, {Scheme::TDDi, 4}};
    Modulation paModulation = Modulation::PSK;
    std::vector<Scheme> schemes{Scheme::PA, Scheme::FDDi, Scheme::TDDi};
    std::size_t nSamples = kDefaultInfoSamples;
    bool bounds = false;
    std::size_t boundSamples = kDefaultBoundSamples;
    std::uint64_t seed = 1;

    MiniSlotGrid grid() const;
    PowerDelayProfile power_delay_profile() const;
    Constellation constellation(Scheme s) const;
    void validate() const;
};

// JSON document <-> Scenario. Unknown keys are rejected.
Scenario parse_scenario(const std::string& jsonText);
Scenario load_scenario(const std::string& path);
std::string scenario_to_json(const Scenario& s);

// Resource-grid description (sizes, pilot layout, per-scheme N) as JSON.
std::string grid_to_json(const MiniSlotGrid& grid);

struct SweepRow {
    Scheme scheme;
    int K = 0;
    int T = 0;
    int M = 0;
    double fdTs = 0.0;
    double gammaDb = 0.0;
    std::optional<FblResult> fbl;
    std::optional<BoundEstimate> is;
    std::optional<BoundEstimate> dt;
    std::optional<std::string> error;
};

// Rows in scenario order: scheme, then fdTs, then gammaDb.
std::vector<SweepRow> evaluate_sweep(const Scenario& s);
void write_csv(const std::vector<SweepRow>& rows, const Scenario& s, std::ostream& out);
void run_sweep(const Scenario& s, std::ostream& out);
void run_sweep(const Scenario& s, const std::string& outputPath);

struct Candidate {
    Scheme scheme;
    std::string constellation;
    bool feasible = false;
    std::optional<FblResult> fbl;
    std::optional<std::string> note;
};

struct Recommendation {
    std::vector<Candidate> ranked; // feasible ones by ascending epsilon, then infeasible
    Scheme chosen;
    std::string rationale;
};

// Requires scalar fdTs and gammaDb. Ties go FDDi, then PA, then TDDi.
Recommendation select_scheme(const Scenario& s);
std::string recommendation_to_json(const Recommendation& r);

struct CrossoverPoint {
    double fdTs = 0.0;
    double epsilonA = 0.0;
    double epsilonB = 0.0;
};

struct CrossoverReport {
    Scheme a;
    Scheme b;
    std::vector<CrossoverPoint> curve;
    std::vector<double> flips;      // sweep points where the ordering changes
    std::optional<double> crossover;
    bool ambiguous = false;
};

// Requires exactly two schemes, an ascending fdTs sweep and scalar gammaDb.
CrossoverReport doppler_crossover(const Scenario& s);
std::string crossover_to_json(const CrossoverReport& r);

struct SelftestCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

std::vector<SelftestCheck> run_selftest(std::uint64_t seed);

inline constexpr std::uint64_t kBoundStream = 0xb0bdULL;

} // namespace minislot
