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

#include "minislot/scenario.hpp"

#include <doctest.h>

#include <sstream>

using namespace minislot;

namespace {

std::string sweep_csv(const Scenario& s)
{
    std::ostringstream out;
    run_sweep(s, out);
    return out.str();
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text)
{
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ','))
            cells.push_back(cell);
        if (!line.empty() && line.back() == ',')
            cells.emplace_back();
        rows.push_back(cells);
    }
    return rows;
}

} // namespace

TEST_CASE("scenario JSON round trip and validation")
{
    const Scenario s = parse_scenario(R"({"K": 128, "T": 4, "fdTs": [0.01, 0.1], "gammaDb": 3,
        "M": {"PA": 16}, "paModulation": "QAM", "schemes": ["PA", "FDDi"], "nSamples": 20000,
        "pdp": {"L": 6, "decay": 0.5}, "seed": 99})");
    CHECK(s.K == 128);
    CHECK(s.fdTs.size() == 2);
    CHECK(s.gammaDb == std::vector<double>{3.0});
    CHECK(s.constellation(Scheme::PA).name() == "QAM16");
    CHECK(s.constellation(Scheme::FDDi).name() == "PSK4");
    const Scenario r = parse_scenario(scenario_to_json(s));
    CHECK(scenario_to_json(r) == scenario_to_json(s));

    CHECK_THROWS_AS(parse_scenario(R"({"Kay": 4})"), InvalidArgument);
    CHECK_THROWS_AS(parse_scenario(R"({"fdTs": [0.1, 0.01]})"), InvalidArgument);
    CHECK_THROWS_AS(parse_scenario(R"({"T": 3})"), InvalidArgument);
    CHECK_THROWS_AS(parse_scenario("{not json"), InvalidArgument);
    CHECK_THROWS_AS(parse_scenario(R"({"schemes": ["XYZ"]})"), InvalidArgument);
}

TEST_CASE("grid JSON")
{
    const std::string j = grid_to_json(MiniSlotGrid(256, 2, standard_pattern(2, false, 2)));
    CHECK(j.find("\"PA\": 384") != std::string::npos);
    CHECK(j.find("\"FDDi\": 510") != std::string::npos);
    CHECK(j.find("\"TDDi\": 256") != std::string::npos);
}

TEST_CASE("sweep CSV")
{
    Scenario s = parse_scenario(R"({"K": 256, "T": 2, "B": 256, "fdTs": 0.01, "gammaDb": [0, 2],
        "nSamples": 20000, "seed": 5})");
    const std::string csv = sweep_csv(s);
    const auto rows = parse_csv(csv);
    REQUIRE(rows.size() == 7);
    CHECK(rows[0][0] == "scheme");
    CHECK(rows[0].size() == 20);
    CHECK(rows[1][0] == "PA");
    CHECK(rows[1][6] == "384");
    CHECK(rows[3][6] == "510");
    CHECK(rows[5][6] == "256");
    CHECK(!rows[1][8].empty());
    CHECK(rows[3][8].empty());
    CHECK(csv == sweep_csv(s));

    s.schemes.clear();
    CHECK(parse_csv(sweep_csv(s)).size() == 1);

    Scenario bad = s;
    bad.schemes = {Scheme::TDDi, Scheme::FDDi};
    bad.B = 600;
    const auto br = parse_csv(sweep_csv(bad));
    REQUIRE(br.size() == 5);
    CHECK(br[1].back() == "infeasible_payload");
}

TEST_CASE("FDDi rows do not depend on fdTs")
{
    const Scenario s = parse_scenario(R"({"schemes": ["FDDi"], "fdTs": [0.001, 0.01, 0.05, 0.1, 0.2],
        "gammaDb": 2, "nSamples": 20000})");
    const auto rows = evaluate_sweep(s);
    REQUIRE(rows.size() == 5);
    for (const auto& r : rows) {
        CHECK(r.fbl->epsilon == rows[0].fbl->epsilon);
        CHECK(r.fbl->V == rows[0].fbl->V);
    }
}

TEST_CASE("sweep with bounds")
{
    const Scenario s = parse_scenario(R"({"schemes": ["FDDi"], "gammaDb": 2, "nSamples": 20000,
        "bounds": true, "boundSamples": 100000})");
    const auto rows = evaluate_sweep(s);
    REQUIRE(rows.size() == 1);
    REQUIRE(rows[0].is.has_value());
    CHECK(rows[0].is->value <= rows[0].dt->value);
}

TEST_CASE("scheme selection")
{
    Scenario s = parse_scenario(R"({"K": 256, "B": 256, "fdTs": 0.01, "gammaDb": 2, "nSamples": 50000})");
    const Recommendation low = select_scheme(s);
    CHECK(low.chosen == Scheme::PA);
    for (std::size_t i = 1; i < low.ranked.size(); ++i)
        if (low.ranked[i].feasible)
            CHECK(low.ranked[i].fbl->epsilon >= low.ranked[0].fbl->epsilon);
    CHECK(!low.rationale.empty());

    // High Doppler at higher SNR, where the PA estimation floor dominates.
    s.fdTs = {0.1};
    s.gammaDb = {6.0};
    const Recommendation high = select_scheme(s);
    CHECK(high.chosen == Scheme::FDDi);
    CHECK(high.rationale.rfind("doppler", 0) == 0);
    s.gammaDb = {2.0};

    s.schemes = {Scheme::TDDi};
    const Recommendation one = select_scheme(s);
    CHECK(one.chosen == Scheme::TDDi);
    REQUIRE(one.ranked.size() == 1);

    s.schemes = {Scheme::TDDi, Scheme::FDDi};
    s.B = 600;
    const Recommendation excl = select_scheme(s);
    CHECK(excl.chosen == Scheme::FDDi);
    CHECK_FALSE(excl.ranked.back().feasible);

    s.gammaDb = {1.0, 2.0};
    CHECK_THROWS_AS(select_scheme(s), InvalidArgument);
}

TEST_CASE("doppler crossover")
{
    Scenario s = parse_scenario(R"({"schemes": ["FDDi", "FDDi"], "fdTs": [0.01, 0.05, 0.1],
        "gammaDb": 5, "nSamples": 20000})");
    const CrossoverReport same = doppler_crossover(s);
    CHECK_FALSE(same.crossover.has_value());
    CHECK_FALSE(same.ambiguous);

    s.schemes = {Scheme::PA, Scheme::FDDi};
    s.fdTs = {0.05};
    CHECK_FALSE(doppler_crossover(s).crossover.has_value());

    s.fdTs = {0.01, 0.02, 0.03, 0.04, 0.05, 0.06, 0.07, 0.08, 0.09, 0.1};
    const CrossoverReport pf = doppler_crossover(s);
    REQUIRE(pf.crossover.has_value());
    CHECK(*pf.crossover > 0.01);
    CHECK(*pf.crossover <= 0.1);
    CHECK(crossover_to_json(pf) == crossover_to_json(doppler_crossover(s)));

    s.schemes = {Scheme::PA};
    CHECK_THROWS_AS(doppler_crossover(s), InvalidArgument);
}

TEST_CASE("selftest passes")
{
    for (const SelftestCheck& c : run_selftest(1)) {
        INFO(c.name << ": " << c.detail);
        CHECK(c.pass);
    }
}
