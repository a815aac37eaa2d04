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

// Command-line front end: sweep, select, crossover, selftest.

#include "minislot/montecarlo.hpp"
#include "minislot/scenario.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

namespace {

using namespace minislot;

struct Overrides {
    std::optional<int> K, T, B, deltaSub, M, L;
    std::optional<double> decay;
    std::vector<double> fdTs, gammaDb;
    std::vector<std::string> schemes;
    std::optional<std::size_t> nSamples, boundSamples;
    std::optional<std::uint64_t> seed;
    bool bounds = false;
    unsigned workers = 0;
};

void add_scenario_flags(CLI::App* cmd, std::string& config, Overrides& o)
{
    cmd->add_option("--config,-c", config, "Scenario JSON file")->check(CLI::ExistingFile);
    cmd->add_option("--seed", o.seed, "Master seed (overrides FBL_SEED and the config)");
    cmd->add_option("--K", o.K, "Subcarriers");
    cmd->add_option("--T", o.T, "OFDM symbols per mini-slot");
    cmd->add_option("--B", o.B, "Information bits");
    cmd->add_option("--delta-sub", o.deltaSub, "Pilot subcarrier spacing");
    cmd->add_option("--M", o.M, "Modulation order for every scheme");
    cmd->add_option("--L", o.L, "Number of channel taps");
    cmd->add_option("--decay", o.decay, "Exponential power-delay decay per tap");
    cmd->add_option("--fdts", o.fdTs, "Normalized Doppler value(s)");
    cmd->add_option("--gamma-db", o.gammaDb, "SNR value(s) in dB");
    cmd->add_option("--schemes", o.schemes, "Schemes (PA, FDDi, TDDi)");
    cmd->add_option("--samples", o.nSamples, "Information-density samples per point");
    cmd->add_option("--bound-samples", o.boundSamples, "Block samples for the IS/DT bounds");
    cmd->add_option("--workers", o.workers, "Worker threads (0 = all cores)");
}

Scenario resolve(const std::string& config, const Overrides& o)
{
    Scenario s = config.empty() ? parse_scenario("{}") : load_scenario(config);
    if (o.K) s.K = *o.K;
    if (o.T) s.T = *o.T;
    if (o.B) s.B = *o.B;
    if (o.deltaSub) s.deltaSub = *o.deltaSub;
    if (o.M)
        for (auto& [_, v] : s.M)
            v = *o.M;
    if (o.L) s.pdp.L = *o.L;
    if (o.decay) s.pdp.decay = *o.decay;
    if (!o.fdTs.empty()) s.fdTs = o.fdTs;
    if (!o.gammaDb.empty()) s.gammaDb = o.gammaDb;
    if (!o.schemes.empty()) {
        s.schemes.clear();
        for (const auto& n : o.schemes)
            s.schemes.push_back(scheme_from_string(n));
    }
    if (o.nSamples) s.nSamples = *o.nSamples;
    if (o.boundSamples) s.boundSamples = *o.boundSamples;
    if (o.bounds) s.bounds = true;
    if (o.seed) {
        s.seed = *o.seed;
    } else if (const char* env = std::getenv("FBL_SEED")) {
        try {
            s.seed = std::stoull(env);
        } catch (const std::exception&) {
            throw InvalidArgument("FBL_SEED must be an unsigned integer");
        }
    }
    s.validate();
    return s;
}

void emit(const std::string& text, const std::string& out)
{
    if (out.empty() || out == "-") {
        std::cout << text << '\n';
        return;
    }
    std::ofstream f(out, std::ios::binary);
    if (!f)
        throw InvalidArgument("cannot write '" + out + "'");
    f << text << '\n';
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Finite-blocklength link evaluation for mini-slot OFDM"};
    app.require_subcommand(1);

    std::string config, out;
    Overrides o;

    auto* sweep = app.add_subcommand("sweep", "Scenario sweep to CSV");
    add_scenario_flags(sweep, config, o);
    sweep->add_flag("--bounds", o.bounds, "Also estimate the IS and DT bounds");
    sweep->add_option("--out,-o", out, "Output CSV (default stdout)");

    auto* select = app.add_subcommand("select", "Recommend a scheme (JSON)");
    add_scenario_flags(select, config, o);
    select->add_option("--out,-o", out, "Output JSON (default stdout)");

    auto* cross = app.add_subcommand("crossover", "Doppler crossover between two schemes (JSON)");
    add_scenario_flags(cross, config, o);
    cross->add_option("--out,-o", out, "Output JSON (default stdout)");

    auto* self = app.add_subcommand("selftest", "Run the built-in invariant checks");
    std::optional<std::uint64_t> selfSeed;
    self->add_option("--seed", selfSeed, "Seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        set_worker_count(o.workers);
        if (*self) {
            std::uint64_t seed = 1;
            if (selfSeed)
                seed = *selfSeed;
            else if (const char* env = std::getenv("FBL_SEED"))
                seed = std::stoull(env);
            bool ok = true;
            for (const SelftestCheck& c : run_selftest(seed)) {
                std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << " [" << c.detail << "]\n";
                ok = ok && c.pass;
            }
            return ok ? 0 : 2;
        }
        const Scenario s = resolve(config, o);
        if (*sweep) {
            if (out.empty() || out == "-")
                run_sweep(s, std::cout);
            else
                run_sweep(s, out);
        } else if (*select) {
            emit(recommendation_to_json(select_scheme(s)), out);
        } else if (*cross) {
            emit(crossover_to_json(doppler_crossover(s)), out);
        }
        return 0;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return 1;
    }
}
