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

// Model predictions against this implementation: closed-form MSEs
// against the actual LMMSE + interpolation estimator, and the high-Doppler
// scheme ranking.

#include "minislot/chanest.hpp"
#include "minislot/scenario.hpp"

#include <doctest.h>

using namespace minislot;

namespace {

bool within3(const MomentSummary& m, double want)
{
    MESSAGE("empirical " << m.mean << " +- " << m.stderrMean << ", closed form " << want << ", z = "
                         << (m.mean - want) / m.stderrMean);
    return std::abs(m.mean - want) <= 3.0 * m.stderrMean;
}

} // namespace

TEST_CASE("phi_linear vs estimator (K=256, deltaSub=2, L=5, 10 dB)")
{
    const PowerDelayProfile pdp = exponential_pdp(5);
    const MiniSlotGrid g(256, 2, standard_pattern(2, false, 2));
    const double gamma = db_to_linear(10.0);
    const EmpiricalMse e = empirical_mse(g, pdp, DopplerSpec(0.01), gamma, 100'000, 11);
    const MseBreakdown m = analyze_mse(g, pdp, DopplerSpec(0.01), gamma);
    CHECK(within3(e.linear, m.phiLinear));
}

TEST_CASE("phi_region_a vs estimator (fdTs=0.1, deltaSym=2)")
{
    const PowerDelayProfile pdp = exponential_pdp(5);
    const MiniSlotGrid g(64, 2, standard_pattern(2, false, 2));
    const double gamma = db_to_linear(10.0);
    const EmpiricalMse e = empirical_mse(g, pdp, DopplerSpec(0.1), gamma, 100'000, 12);
    CHECK(within3(e.regionA, analyze_mse(g, pdp, DopplerSpec(0.1), gamma).phiA));
}

TEST_CASE("phi_region_b vs estimator (T=7, pilots on symbols 1 and 5)")
{
    const PowerDelayProfile pdp = exponential_pdp(5);
    const MiniSlotGrid g(64, 7, standard_pattern(7, true, 2));
    const double gamma = db_to_linear(10.0);
    const EmpiricalMse e = empirical_mse(g, pdp, DopplerSpec(0.05), gamma, 100'000, 13);
    CHECK(within3(e.regionB, analyze_mse(g, pdp, DopplerSpec(0.05), gamma).phiB));
}

TEST_CASE("sigma_e^2 vs estimator (K=64, T=2, fdTs=0.01, 2 dB)")
{
    const PowerDelayProfile pdp = exponential_pdp(5);
    const MiniSlotGrid g(64, 2, standard_pattern(2, false, 2));
    const double gamma = db_to_linear(2.0);
    const EmpiricalMse e = empirical_mse(g, pdp, DopplerSpec(0.01), gamma, 100'000, 14);
    CHECK(within3(e.sigmaE2, analyze_mse(g, pdp, DopplerSpec(0.01), gamma).sigmaE2));
}

TEST_CASE("high Doppler selects FDDi (K=256, T=2, B=256, M=4, 2 dB, fdTs=0.1)")
{
    Scenario s = parse_scenario(R"({"K": 256, "B": 256, "fdTs": 0.1, "gammaDb": 2, "nSamples": 1000000})");
    const Recommendation r = select_scheme(s);
    MESSAGE(r.rationale);
    CHECK(r.chosen == Scheme::FDDi);
}
