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

#include "minislot/grid.hpp"

#include <algorithm>
#include <cmath>

namespace minislot {

std::string_view to_string(Scheme s)
{
    switch (s) {
    case Scheme::PA: return "PA";
    case Scheme::FDDi: return "FDDi";
    case Scheme::TDDi: return "TDDi";
    }
    return "?";
}

Scheme scheme_from_string(std::string_view name)
{
    if (name == "PA") return Scheme::PA;
    if (name == "FDDi") return Scheme::FDDi;
    if (name == "TDDi") return Scheme::TDDi;
    throw InvalidArgument("unknown scheme '" + std::string(name) + "'");
}

bool PilotPattern::carries_pilots(int t) const
{
    return std::find(pilotSymbols.begin(), pilotSymbols.end(), t) != pilotSymbols.end();
}

PilotPattern make_pattern(std::vector<int> pilotSymbols, int deltaSub, int T)
{
    require(!pilotSymbols.empty(), "pilot pattern needs at least one pilot symbol");
    require(deltaSub >= 1, "pilot subcarrier spacing must be >= 1");
    require(std::is_sorted(pilotSymbols.begin(), pilotSymbols.end())
                && std::adjacent_find(pilotSymbols.begin(), pilotSymbols.end()) == pilotSymbols.end(),
            "pilot symbols must be strictly ascending");
    require(pilotSymbols.front() >= 1 && pilotSymbols.back() <= T, "pilot symbol outside the mini-slot");

    PilotPattern p{std::move(pilotSymbols), deltaSub, T};
    if (p.pilotSymbols.size() > 1) {
        p.deltaSym = p.pilotSymbols[1] - p.pilotSymbols[0];
        for (std::size_t i = 2; i < p.pilotSymbols.size(); ++i)
            require(p.pilotSymbols[i] - p.pilotSymbols[i - 1] == p.deltaSym,
                    "pilot symbols must be equally spaced");
    }
    return p;
}

PilotPattern standard_pattern(int T, bool highMobility, int deltaSub)
{
    require(T == 2 || T == 4 || T == 7, "mini-slot length must be 2, 4 or 7 symbols");
    if (T == 7 && highMobility)
        return make_pattern({1, 5}, deltaSub, T);
    return make_pattern({1}, deltaSub, T);
}

MiniSlotGrid::MiniSlotGrid(int K, int T, std::optional<PilotPattern> pattern)
    : K_(K)
    , T_(T)
    , pattern_(std::move(pattern))
{
    require(K > 1, "subcarrier count must be > 1");
    require(T == 2 || T == 4 || T == 7, "mini-slot length must be 2, 4 or 7 symbols");
    if (pattern_) {
        require(K % pattern_->deltaSub == 0, "pilot spacing must divide the subcarrier count");
        require(pattern_->pilotSymbols.back() <= T, "pilot symbol outside the mini-slot");
        if (pattern_->pilotSymbols.size() == 1)
            require(pattern_->deltaSym == T, "single pilot symbol implies deltaSym = T");
    }
}

const PilotPattern& MiniSlotGrid::require_pattern() const
{
    if (!pattern_)
        throw InvalidArgument("pilot-assisted scheme needs a pilot pattern");
    return *pattern_;
}

int MiniSlotGrid::pilots_per_symbol() const { return K_ / require_pattern().deltaSub; }

int MiniSlotGrid::total_pilots() const
{
    return pilots_per_symbol() * static_cast<int>(require_pattern().pilotSymbols.size());
}

std::string_view to_string(ReClass c)
{
    switch (c) {
    case ReClass::Pilot: return "Pilot";
    case ReClass::LinearData: return "LinearData";
    case ReClass::EdgeData: return "EdgeData";
    case ReClass::RegionA: return "RegionA";
    case ReClass::RegionB: return "RegionB";
    case ReClass::DiffReference: return "DiffReference";
    case ReClass::DiffData: return "DiffData";
    }
    return "?";
}

ReClass classify(const MiniSlotGrid& grid, Scheme scheme, int k, int t)
{
    require(k >= 0 && k < grid.K(), "subcarrier index out of range");
    require(t >= 1 && t <= grid.T(), "symbol index out of range");
    switch (scheme) {
    case Scheme::FDDi:
        return k == 0 ? ReClass::DiffReference : ReClass::DiffData;
    case Scheme::TDDi:
        return t == 1 ? ReClass::DiffReference : ReClass::DiffData;
    case Scheme::PA:
        break;
    }
    const PilotPattern& p = grid.require_pattern();
    const bool onPilotSub = k % p.deltaSub == 0;
    if (!p.carries_pilots(t))
        return onPilotSub ? ReClass::RegionA : ReClass::RegionB;
    if (onPilotSub)
        return ReClass::Pilot;
    const int lastPilotSub = (grid.pilots_per_symbol() - 1) * p.deltaSub;
    return k > lastPilotSub ? ReClass::EdgeData : ReClass::LinearData;
}

int data_symbol_count(const MiniSlotGrid& grid, Scheme scheme)
{
    switch (scheme) {
    case Scheme::PA: return grid.K() * grid.T() - grid.total_pilots();
    case Scheme::FDDi: return (grid.K() - 1) * grid.T();
    case Scheme::TDDi: return grid.K() * (grid.T() - 1);
    }
    return 0;
}

Constellation::Constellation(Modulation kind, int M)
    : kind_(kind)
    , M_(M)
{
    require(M >= 2 && (M & (M - 1)) == 0, "constellation order must be a power of two >= 2");
    if (kind == Modulation::PSK) {
        for (int m = 0; m < M; ++m)
            points_.push_back(std::polar(1.0, 2.0 * kPi * m / M));
        return;
    }
    const int side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(M))));
    require(side * side == M && M >= 4, "QAM order must be a square power of two");
    const double xi = 2.0 * (M - 1) / 3.0;
    const double norm = 1.0 / std::sqrt(xi);
    for (int i = 0; i < side; ++i)
        for (int q = 0; q < side; ++q)
            points_.emplace_back(norm * (2 * i - side + 1), norm * (2 * q - side + 1));
}

double Constellation::bits_per_symbol() const { return std::log2(static_cast<double>(M_)); }

std::string Constellation::name() const
{
    return (kind_ == Modulation::PSK ? "PSK" : "QAM") + std::to_string(M_);
}

Constellation constellation_from_string(std::string_view name)
{
    auto parse = [&](std::string_view prefix, Modulation kind) -> std::optional<Constellation> {
        if (name.substr(0, prefix.size()) != prefix)
            return std::nullopt;
        const std::string digits(name.substr(prefix.size()));
        require(!digits.empty() && digits.find_first_not_of("0123456789") == std::string::npos,
                "bad constellation '" + std::string(name) + "'");
        return Constellation(kind, std::stoi(digits));
    };
    if (auto c = parse("PSK", Modulation::PSK)) return *c;
    if (auto c = parse("QAM", Modulation::QAM)) return *c;
    if (name == "BPSK") return Constellation::psk(2);
    if (name == "QPSK") return Constellation::psk(4);
    throw InvalidArgument("unknown constellation '" + std::string(name) + "'");
}

std::vector<SchemeConfig> match_coding_rates(int B, const MiniSlotGrid& grid,
                                             const std::vector<std::pair<Scheme, Constellation>>& schemes)
{
    require(B > 0, "payload must be positive");
    std::vector<SchemeConfig> out;
    out.reserve(schemes.size());
    for (const auto& [scheme, constellation] : schemes) {
        require(scheme == Scheme::PA || constellation.kind() == Modulation::PSK,
                "differential schemes carry PSK symbols");
        const int N = data_symbol_count(grid, scheme);
        const double capacityBits = N * constellation.bits_per_symbol();
        if (static_cast<double>(B) > capacityBits)
            throw InfeasiblePayload(std::string(to_string(scheme)) + ": payload of " + std::to_string(B)
                                    + " bits exceeds " + std::to_string(static_cast<long>(capacityBits))
                                    + " coded bits");
        out.push_back({scheme, constellation, N, B, B / capacityBits});
    }
    return out;
}

} // namespace minislot
