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
#include "minislot/modem.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

namespace minislot {

using nlohmann::json;

namespace {

const std::set<std::string> kScenarioKeys{
    "K", "T", "deltaSub", "highMobility", "pilotSymbols", "pdp", "fdTs", "gammaDb", "B", "M",
    "paModulation", "schemes", "nSamples", "bounds", "boundSamples", "seed"};

std::vector<double> number_or_list(const json& j, const char* key)
{
    if (j.is_number())
        return {j.get<double>()};
    if (j.is_array()) {
        std::vector<double> v;
        for (const auto& e : j) {
            require(e.is_number(), std::string(key) + " entries must be numbers");
            v.push_back(e.get<double>());
        }
        return v;
    }
    throw InvalidArgument(std::string(key) + " must be a number or a list of numbers");
}

template <class T>
T get_as(const json& j, const char* key)
{
    try {
        return j.get<T>();
    } catch (const json::exception&) {
        throw InvalidArgument(std::string("bad value for ") + key);
    }
}

bool strictly_ascending(const std::vector<double>& v)
{
    return std::adjacent_find(v.begin(), v.end(), [](double a, double b) { return !(a < b); }) == v.end();
}

std::string fmt(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string modulation_name(Modulation m) { return m == Modulation::PSK ? "PSK" : "QAM"; }

int tie_rank(Scheme s)
{
    switch (s) {
    case Scheme::FDDi:
        return 0;
    case Scheme::PA:
        return 1;
    case Scheme::TDDi:
        return 2;
    }
    return 3;
}

json fbl_json(const FblResult& r)
{
    json j{{"N", r.N}, {"R", r.R}, {"I", r.I}, {"V", r.V}, {"stderrI", r.stderrI},
           {"stderrV", r.stderrV}, {"epsilon", r.epsilon}, {"nSamples", r.nSamples}};
    if (r.sigmaE2)
        j["sigmaE2"] = *r.sigmaE2;
    if (r.gammaHat)
        j["gammaHatDb"] = linear_to_db(*r.gammaHat);
    if (r.warning)
        j["warning"] = *r.warning;
    return j;
}

} // namespace

MiniSlotGrid Scenario::grid() const
{
    PilotPattern p = pilotSymbols ? make_pattern(*pilotSymbols, deltaSub, T)
                                  : standard_pattern(T, highMobility, deltaSub);
    return MiniSlotGrid(K, T, std::move(p));
}

PowerDelayProfile Scenario::power_delay_profile() const { return exponential_pdp(pdp.L, pdp.decay); }

Constellation Scenario::constellation(Scheme s) const
{
    const auto it = M.find(s);
    require(it != M.end(), "no modulation order for " + std::string(to_string(s)));
    return s == Scheme::PA ? Constellation(paModulation, it->second) : Constellation::psk(it->second);
}

void Scenario::validate() const
{
    const MiniSlotGrid g = grid();
    require(pdp.L >= 1 && pdp.L < K, "pdp.L must be in [1, K)");
    require(pdp.decay >= 0.0, "pdp.decay must be >= 0");
    require(!fdTs.empty() && strictly_ascending(fdTs), "fdTs must be a non-empty ascending list");
    require(!gammaDb.empty() && strictly_ascending(gammaDb), "gammaDb must be a non-empty ascending list");
    for (double f : fdTs)
        require(f >= 0.0 && std::isfinite(f), "fdTs must be finite and >= 0");
    for (double g : gammaDb)
        require(std::isfinite(g), "gammaDb must be finite");
    require(B >= 1, "B must be >= 1");
    require(nSamples >= 10'000, "nSamples must be >= 1e4");
    require(!bounds || boundSamples >= kMinBoundSamples, "boundSamples must be >= 1e5");
    for (Scheme s : schemes)
        (void)constellation(s);
    (void)power_delay_profile();
}

Scenario parse_scenario(const std::string& jsonText)
{
    json j;
    try {
        j = json::parse(jsonText);
    } catch (const json::parse_error& e) {
        throw InvalidArgument(std::string("scenario is not valid JSON: ") + e.what());
    }
    require(j.is_object(), "scenario must be a JSON object");
    for (const auto& [key, _] : j.items())
        require(kScenarioKeys.count(key) == 1, "unknown scenario key '" + key + "'");

    Scenario s;
    if (j.contains("K"))
        s.K = get_as<int>(j["K"], "K");
    if (j.contains("T"))
        s.T = get_as<int>(j["T"], "T");
    if (j.contains("deltaSub"))
        s.deltaSub = get_as<int>(j["deltaSub"], "deltaSub");
    if (j.contains("highMobility"))
        s.highMobility = get_as<bool>(j["highMobility"], "highMobility");
    if (j.contains("pilotSymbols"))
        s.pilotSymbols = get_as<std::vector<int>>(j["pilotSymbols"], "pilotSymbols");
    if (j.contains("pdp")) {
        const json& p = j["pdp"];
        require(p.is_object(), "pdp must be an object");
        for (const auto& [key, _] : p.items())
            require(key == "L" || key == "decay", "unknown pdp key '" + key + "'");
        if (p.contains("L"))
            s.pdp.L = get_as<int>(p["L"], "pdp.L");
        if (p.contains("decay"))
            s.pdp.decay = get_as<double>(p["decay"], "pdp.decay");
    }
    if (j.contains("fdTs"))
        s.fdTs = number_or_list(j["fdTs"], "fdTs");
    if (j.contains("gammaDb"))
        s.gammaDb = number_or_list(j["gammaDb"], "gammaDb");
    if (j.contains("B"))
        s.B = get_as<int>(j["B"], "B");
    if (j.contains("M")) {
        const json& m = j["M"];
        if (m.is_number_integer()) {
            for (auto& [_, v] : s.M)
                v = m.get<int>();
        } else {
            require(m.is_object(), "M must be an integer or an object keyed by scheme");
            for (const auto& [key, v] : m.items())
                s.M[scheme_from_string(key)] = get_as<int>(v, "M");
        }
    }
    if (j.contains("paModulation")) {
        const std::string m = get_as<std::string>(j["paModulation"], "paModulation");
        require(m == "PSK" || m == "QAM", "paModulation must be PSK or QAM");
        s.paModulation = m == "PSK" ? Modulation::PSK : Modulation::QAM;
    }
    if (j.contains("schemes")) {
        s.schemes.clear();
        for (const auto& name : get_as<std::vector<std::string>>(j["schemes"], "schemes"))
            s.schemes.push_back(scheme_from_string(name));
    }
    if (j.contains("nSamples"))
        s.nSamples = get_as<std::size_t>(j["nSamples"], "nSamples");
    if (j.contains("bounds"))
        s.bounds = get_as<bool>(j["bounds"], "bounds");
    if (j.contains("boundSamples"))
        s.boundSamples = get_as<std::size_t>(j["boundSamples"], "boundSamples");
    if (j.contains("seed"))
        s.seed = get_as<std::uint64_t>(j["seed"], "seed");
    s.validate();
    return s;
}

Scenario load_scenario(const std::string& path)
{
    std::ifstream in(path);
    require(static_cast<bool>(in), "cannot open scenario file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_scenario(ss.str());
}

std::string scenario_to_json(const Scenario& s)
{
    json m = json::object();
    for (const auto& [scheme, order] : s.M)
        m[std::string(to_string(scheme))] = order;
    json schemes = json::array();
    for (Scheme x : s.schemes)
        schemes.push_back(std::string(to_string(x)));
    json j{{"K", s.K}, {"T", s.T}, {"deltaSub", s.deltaSub}, {"highMobility", s.highMobility},
           {"pdp", {{"L", s.pdp.L}, {"decay", s.pdp.decay}}}, {"fdTs", s.fdTs}, {"gammaDb", s.gammaDb},
           {"B", s.B}, {"M", m}, {"paModulation", modulation_name(s.paModulation)}, {"schemes", schemes},
           {"nSamples", s.nSamples}, {"bounds", s.bounds}, {"boundSamples", s.boundSamples}, {"seed", s.seed}};
    if (s.pilotSymbols)
        j["pilotSymbols"] = *s.pilotSymbols;
    return j.dump(2);
}

std::string grid_to_json(const MiniSlotGrid& grid)
{
    json j{{"K", grid.K()}, {"T", grid.T()}};
    if (grid.pattern()) {
        const PilotPattern& p = *grid.pattern();
        j["pattern"] = {{"pilotSymbols", p.pilotSymbols}, {"deltaSub", p.deltaSub}, {"deltaSym", p.deltaSym}};
        j["pilotsPerSymbol"] = grid.pilots_per_symbol();
        j["totalPilots"] = grid.total_pilots();
    }
    json n = json::object();
    for (Scheme s : {Scheme::PA, Scheme::FDDi, Scheme::TDDi}) {
        if (s == Scheme::PA && !grid.pattern())
            continue;
        n[std::string(to_string(s))] = data_symbol_count(grid, s);
    }
    j["N"] = n;
    return j.dump(2);
}

std::vector<SweepRow> evaluate_sweep(const Scenario& s)
{
    s.validate();
    const MiniSlotGrid grid = s.grid();
    const PowerDelayProfile pdp = s.power_delay_profile();
    std::vector<SweepRow> rows;
    for (Scheme scheme : s.schemes) {
        const Constellation con = s.constellation(scheme);
        for (double fd : s.fdTs) {
            for (double gdb : s.gammaDb) {
                SweepRow row{scheme, s.K, s.T, con.order(), fd, gdb, {}, {}, {}, {}};
                try {
                    const double gamma = db_to_linear(gdb);
                    const DopplerSpec doppler(fd);
                    row.fbl = scheme_fbl(scheme, grid, pdp, doppler, gamma, s.B, con, s.nSamples, s.seed);
                    if (s.bounds) {
                        const SchemeChannel ch = scheme_channel(scheme, grid, pdp, doppler, gamma, con);
                        const std::vector<double> blocks =
                            block_densities(ch.sampler, ch.N, s.boundSamples, derive_seed(s.seed, kBoundStream));
                        row.dt = dt_bound_from_samples(blocks, s.B);
                        row.is = is_bound_from_samples(blocks, s.B);
                    }
                } catch (const InfeasiblePayload&) {
                    row.error = "infeasible_payload";
                }
                rows.push_back(std::move(row));
            }
        }
    }
    return rows;
}

void write_csv(const std::vector<SweepRow>& rows, const Scenario& s, std::ostream& out)
{
    out << "scheme,K,T,M,fdTs,gammaDb,N,R,sigmaE2,gammaHatDb,I,V,epsilonNA,epsilonIS,epsilonISstderr,"
           "epsilonDT,epsilonDTstderr,nSamples,seed,status\n";
    for (const SweepRow& r : rows) {
        out << to_string(r.scheme) << ',' << r.K << ',' << r.T << ',' << r.M << ',' << fmt(r.fdTs) << ','
            << fmt(r.gammaDb) << ',';
        if (r.fbl) {
            const FblResult& f = *r.fbl;
            out << f.N << ',' << fmt(f.R) << ',' << (f.sigmaE2 ? fmt(*f.sigmaE2) : "") << ','
                << (f.gammaHat ? fmt(linear_to_db(*f.gammaHat)) : "") << ',' << fmt(f.I) << ',' << fmt(f.V)
                << ',' << fmt(f.epsilon) << ',';
            if (r.is && r.dt)
                out << fmt(r.is->value) << ',' << fmt(r.is->stdErr) << ',' << fmt(r.dt->value) << ','
                    << fmt(r.dt->stdErr) << ',';
            else
                out << ",,,,";
            out << f.nSamples << ',' << s.seed << ",ok\n";
        } else {
            out << ",,,,,,,,,,," << s.nSamples << ',' << s.seed << ',' << r.error.value_or("error") << '\n';
        }
    }
}

void run_sweep(const Scenario& s, std::ostream& out) { write_csv(evaluate_sweep(s), s, out); }

void run_sweep(const Scenario& s, const std::string& outputPath)
{
    const std::vector<SweepRow> rows = evaluate_sweep(s);
    std::ofstream out(outputPath, std::ios::binary);
    require(static_cast<bool>(out), "cannot write '" + outputPath + "'");
    write_csv(rows, s, out);
}

Recommendation select_scheme(const Scenario& s)
{
    s.validate();
    require(s.fdTs.size() == 1 && s.gammaDb.size() == 1, "select needs scalar fdTs and gammaDb");
    require(!s.schemes.empty(), "select needs at least one scheme");
    const MiniSlotGrid grid = s.grid();
    const PowerDelayProfile pdp = s.power_delay_profile();
    const DopplerSpec doppler(s.fdTs.front());
    const double gamma = db_to_linear(s.gammaDb.front());

    std::vector<Candidate> cands;
    for (Scheme scheme : s.schemes) {
        const Constellation con = s.constellation(scheme);
        Candidate c{scheme, con.name(), false, {}, {}};
        try {
            (void)match_coding_rates(s.B, grid, {{scheme, con}});
            c.fbl = scheme_fbl(scheme, grid, pdp, doppler, gamma, s.B, con, s.nSamples, s.seed);
            c.feasible = true;
        } catch (const InfeasiblePayload& e) {
            c.note = e.what();
        }
        cands.push_back(std::move(c));
    }
    std::stable_sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
        if (a.feasible != b.feasible)
            return a.feasible;
        if (!a.feasible)
            return false;
        if (a.fbl->epsilon != b.fbl->epsilon)
            return a.fbl->epsilon < b.fbl->epsilon;
        return tie_rank(a.scheme) < tie_rank(b.scheme);
    });
    if (!cands.front().feasible)
        throw InfeasiblePayload("no scheme can carry the payload on this grid");

    Recommendation rec{cands, cands.front().scheme, {}};
    const Candidate& best = rec.ranked.front();
    const Candidate* runner = rec.ranked.size() > 1 && rec.ranked[1].feasible ? &rec.ranked[1] : nullptr;

    std::ostringstream why;
    if (!runner) {
        why << "payload: only " << to_string(best.scheme) << " is evaluated or feasible at B = " << s.B;
    } else if (best.scheme != Scheme::PA && runner->scheme == Scheme::PA) {
        const MseBreakdown moving = analyze_mse(grid, pdp, doppler, gamma);
        const MseBreakdown still = analyze_mse(grid, pdp, DopplerSpec(0.0), gamma);
        if (moving.sigmaE2 > 2.0 * still.sigmaE2)
            why << "doppler: fdTs = " << fmt(s.fdTs.front()) << " raises the PA estimation error from "
                << fmt(still.sigmaE2) << " to " << fmt(moving.sigmaE2);
        else
            why << "overhead: " << to_string(best.scheme) << " carries B = " << s.B << " bits on N = "
                << best.fbl->N << " symbols against " << runner->fbl->N << " for PA";
    } else if (best.fbl->N > runner->fbl->N) {
        why << "overhead: " << to_string(best.scheme) << " uses N = " << best.fbl->N << " against "
            << runner->fbl->N << " for " << to_string(runner->scheme);
    } else {
        why << "payload: " << to_string(best.scheme) << " supports R = " << fmt(best.fbl->R)
            << " bits/symbol at the lowest error rate";
    }
    why << " (epsilon " << fmt(best.fbl->epsilon);
    if (runner)
        why << " vs " << fmt(runner->fbl->epsilon) << " for " << to_string(runner->scheme);
    why << ")";
    rec.rationale = why.str();
    return rec;
}

std::string recommendation_to_json(const Recommendation& r)
{
    json ranked = json::array();
    for (const Candidate& c : r.ranked) {
        json j{{"scheme", std::string(to_string(c.scheme))}, {"constellation", c.constellation},
               {"feasible", c.feasible}};
        if (c.fbl)
            j["result"] = fbl_json(*c.fbl);
        if (c.note)
            j["note"] = *c.note;
        ranked.push_back(std::move(j));
    }
    return json{{"chosen", std::string(to_string(r.chosen))}, {"rationale", r.rationale}, {"ranked", ranked}}
        .dump(2);
}

CrossoverReport doppler_crossover(const Scenario& s)
{
    s.validate();
    require(s.schemes.size() == 2, "crossover needs exactly two schemes");
    require(s.gammaDb.size() == 1, "crossover needs a scalar gammaDb");
    const MiniSlotGrid grid = s.grid();
    const PowerDelayProfile pdp = s.power_delay_profile();
    const double gamma = db_to_linear(s.gammaDb.front());

    CrossoverReport rep{s.schemes[0], s.schemes[1], {}, {}, {}, false};
    const Constellation ca = s.constellation(rep.a);
    const Constellation cb = s.constellation(rep.b);
    int prev = 0;
    for (double fd : s.fdTs) {
        const DopplerSpec d(fd);
        const double ea = scheme_fbl(rep.a, grid, pdp, d, gamma, s.B, ca, s.nSamples, s.seed).epsilon;
        const double eb = scheme_fbl(rep.b, grid, pdp, d, gamma, s.B, cb, s.nSamples, s.seed).epsilon;
        rep.curve.push_back({fd, ea, eb});
        const int sign = (ea > eb) - (ea < eb);
        if (sign != 0) {
            if (prev != 0 && sign != prev)
                rep.flips.push_back(fd);
            prev = sign;
        }
    }
    if (!rep.flips.empty())
        rep.crossover = rep.flips.front();
    rep.ambiguous = rep.flips.size() > 1;
    return rep;
}

std::string crossover_to_json(const CrossoverReport& r)
{
    json curve = json::array();
    for (const CrossoverPoint& p : r.curve)
        curve.push_back({{"fdTs", p.fdTs}, {"epsilonA", p.epsilonA}, {"epsilonB", p.epsilonB}});
    json j{{"schemeA", std::string(to_string(r.a))}, {"schemeB", std::string(to_string(r.b))},
           {"curve", curve}, {"flips", r.flips}, {"ambiguous", r.ambiguous}};
    j["crossover"] = r.crossover ? json(*r.crossover) : json(nullptr);
    return j.dump(2);
}

std::vector<SelftestCheck> run_selftest(std::uint64_t seed)
{
    std::vector<SelftestCheck> out;
    auto check = [&out](std::string name, auto&& fn) {
        SelftestCheck c{std::move(name), false, {}};
        try {
            c.pass = fn(c.detail);
        } catch (const std::exception& e) {
            c.detail = e.what();
        }
        out.push_back(std::move(c));
    };
    constexpr std::size_t n = 20'000;

    check("awgn_capacity_dispersion(1) = (1, 0.75)", [](std::string& d) {
        const CapacityDispersion cd = awgn_capacity_dispersion(1.0);
        d = "C=" + fmt(cd.C) + " V=" + fmt(cd.V);
        return cd.C == 1.0 && cd.V == 0.75;
    });
    check("effective SNR without estimation error equals the SNR", [](std::string& d) {
        const double w = 0.3;
        const double g = db_to_linear(7.0);
        d = fmt(effective_snr(0.0, w)) + " vs " + fmt(1.0 / w);
        return effective_snr(0.0, w) == 1.0 / w && effective_snr_at(0.0, g) == g;
    });
    check("time-domain chain matches the subcarrier model", [seed](std::string& d) {
        const int K = 64, T = 2;
        const PowerDelayProfile pdp = exponential_pdp(5);
        const ChannelGrid ch = sample_channel_grid(pdp, DopplerSpec(0.05), K, T, derive_seed(seed, 1));
        Rng rng(derive_seed(seed, 2));
        CMatrix x(K, T);
        for (int t = 0; t < T; ++t)
            for (int k = 0; k < K; ++k)
                x(k, t) = complex_normal(rng);
        const RxGrid a = ofdm_time_domain_chain(x, ch, 0.1, derive_seed(seed, 3));
        const RxGrid b = fast_rx(x, ch, 0.1, derive_seed(seed, 3));
        const double rel = (a.z - b.z).cwiseAbs().maxCoeff() / b.z.cwiseAbs().maxCoeff();
        d = "max relative deviation " + fmt(rel);
        return rel < 1e-9;
    });
    check("FDDi epsilon independent of fdTs", [seed](std::string& d) {
        const MiniSlotGrid g(64, 2);
        const PowerDelayProfile pdp = exponential_pdp(5);
        const double e0 = scheme_fbl(Scheme::FDDi, g, pdp, DopplerSpec(0.001), 2.0, 64, Constellation::psk(4), n, seed).epsilon;
        const double e1 = scheme_fbl(Scheme::FDDi, g, pdp, DopplerSpec(0.2), 2.0, 64, Constellation::psk(4), n, seed).epsilon;
        d = fmt(e0) + " vs " + fmt(e1);
        return e0 == e1;
    });
    check("differential density reproducible and within [0, log2 M]", [seed](std::string& d) {
        const DiffChannelParams p{db_to_linear(5.0), 0.95, 4};
        const InfoEstimate a = diff_capacity_dispersion(p, n, seed);
        const InfoEstimate b = diff_capacity_dispersion(p, n, seed);
        d = "I=" + fmt(a.I) + " V=" + fmt(a.V);
        return a.I == b.I && a.V == b.V && a.I >= 0.0 && a.I <= 2.0 && a.V >= 0.0;
    });
    check("coherent QPSK at 30 dB saturates", [seed](std::string& d) {
        const InfoEstimate e = coherent_capacity_dispersion(1000.0, Constellation::psk(4), n, seed);
        d = "I=" + fmt(e.I);
        return e.I >= 1.99 && e.I <= 2.0;
    });
    check("IS <= DT on shared samples", [seed](std::string& d) {
        const DensitySampler smp(DiffDensitySampler({db_to_linear(3.0), 0.9, 4}));
        const std::vector<double> blocks = block_densities(smp, 16, kMinBoundSamples, seed);
        const BoundEstimate is = is_bound_from_samples(blocks, 12);
        const BoundEstimate dt = dt_bound_from_samples(blocks, 12);
        d = "IS=" + fmt(is.value) + " DT=" + fmt(dt.value);
        return is.value <= dt.value + 2.0 * std::hypot(is.stdErr, dt.stdErr);
    });
    return out;
}

} // namespace minislot
