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

// Python extension. Scenario-level calls take the same JSON document the
// CLI reads; the Python package passes dicts through json.dumps.

#include "minislot/bounds.hpp"
#include "minislot/chanest.hpp"
#include "minislot/channel.hpp"
#include "minislot/fbl.hpp"
#include "minislot/grid.hpp"
#include "minislot/scenario.hpp"

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace minislot;

namespace {

py::dict fbl_dict(const FblResult& r)
{
    py::dict d;
    d["scheme"] = std::string(to_string(r.scheme));
    d["N"] = r.N;
    d["R"] = r.R;
    d["I"] = r.I;
    d["V"] = r.V;
    d["stderr_I"] = r.stderrI;
    d["stderr_V"] = r.stderrV;
    d["epsilon"] = r.epsilon;
    d["n_samples"] = r.nSamples;
    d["sigma_e2"] = r.sigmaE2 ? py::cast(*r.sigmaE2) : py::none();
    d["gamma_hat"] = r.gammaHat ? py::cast(*r.gammaHat) : py::none();
    d["warning"] = r.warning ? py::cast(*r.warning) : py::none();
    return d;
}

py::object bound_obj(const std::optional<BoundEstimate>& b)
{
    if (!b)
        return py::none();
    py::dict d;
    d["kind"] = std::string(to_string(b->kind));
    d["value"] = b->value;
    d["stderr"] = b->stdErr;
    d["n_samples"] = b->nSamples;
    d["log2_beta_star"] = b->log2BetaStar ? py::cast(*b->log2BetaStar) : py::none();
    return d;
}

py::dict mse_dict(const MseBreakdown& m)
{
    py::dict d;
    d["phi_lmmse"] = m.phiLmmse;
    d["phi_linear"] = m.phiLinear;
    d["phi_edge"] = m.phiEdge;
    d["phi_a"] = m.phiA;
    d["phi_b"] = m.phiB;
    d["sigma_e2"] = m.sigmaE2;
    d["sigma_e2_full"] = m.sigmaE2Full;
    return d;
}

} // namespace

PYBIND11_MODULE(_minislot, m)
{
    m.doc() = "minislot core";

    py::register_exception<InfeasiblePayload>(m, "InfeasiblePayload", PyExc_ValueError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

    // channel / fbl primitives
    m.def("bessel_j0", &bessel_j0, py::arg("x"));
    m.def("time_correlation", [](int dt, double fdTs) { return time_correlation(dt, DopplerSpec(fdTs)); },
          py::arg("delta_t"), py::arg("fdts"));
    m.def(
        "freq_correlation",
        [](int dk, int K, int L, double decay) { return freq_correlation(dk, exponential_pdp(L, decay), K); },
        py::arg("delta_k"), py::arg("K"), py::arg("L") = 5, py::arg("decay") = 1.0);
    m.def(
        "awgn_capacity_dispersion",
        [](double g) {
            const CapacityDispersion c = awgn_capacity_dispersion(g);
            return py::make_tuple(c.C, c.V);
        },
        py::arg("gamma"));
    m.def("q_function", &q_function, py::arg("x"));
    m.def("normal_approx_bler", &normal_approx_bler, py::arg("I"), py::arg("V"), py::arg("N"), py::arg("R"));
    m.def("dt_threshold", &dt_threshold, py::arg("B"));
    m.def("effective_snr_at", &effective_snr_at, py::arg("sigma_e2"), py::arg("gamma"));

    // scenario-level operations
    m.def("normalize_config", [](const std::string& j) { return scenario_to_json(parse_scenario(j)); });
    m.def("grid_json", [](const std::string& j) { return grid_to_json(parse_scenario(j).grid()); });
    m.def("analyze_mse", [](const std::string& j) {
        const Scenario s = parse_scenario(j);
        require(s.fdTs.size() == 1 && s.gammaDb.size() == 1, "analyze_mse needs scalar fdTs and gammaDb");
        return mse_dict(analyze_mse(s.grid(), s.power_delay_profile(), DopplerSpec(s.fdTs[0]),
                                    db_to_linear(s.gammaDb[0])));
    });
    m.def("scheme_fbl", [](const std::string& j, const std::string& scheme) {
        const Scenario s = parse_scenario(j);
        require(s.fdTs.size() == 1 && s.gammaDb.size() == 1, "scheme_fbl needs scalar fdTs and gammaDb");
        const Scheme sc = scheme_from_string(scheme);
        FblResult r;
        {
            py::gil_scoped_release nogil;
            r = scheme_fbl(sc, s.grid(), s.power_delay_profile(), DopplerSpec(s.fdTs[0]),
                           db_to_linear(s.gammaDb[0]), s.B, s.constellation(sc), s.nSamples, s.seed);
        }
        return fbl_dict(r);
    });
    m.def("evaluate_sweep", [](const std::string& j) {
        const Scenario s = parse_scenario(j);
        std::vector<SweepRow> rows;
        {
            py::gil_scoped_release nogil;
            rows = evaluate_sweep(s);
        }
        py::list out;
        for (const SweepRow& r : rows) {
            py::dict d;
            d["scheme"] = std::string(to_string(r.scheme));
            d["K"] = r.K;
            d["T"] = r.T;
            d["M"] = r.M;
            d["fdts"] = r.fdTs;
            d["gamma_db"] = r.gammaDb;
            d["fbl"] = r.fbl ? py::object(fbl_dict(*r.fbl)) : py::none();
            d["is"] = bound_obj(r.is);
            d["dt"] = bound_obj(r.dt);
            d["status"] = r.error ? *r.error : std::string("ok");
            out.append(d);
        }
        return out;
    });
    m.def("sweep_csv", [](const std::string& j) {
        const Scenario s = parse_scenario(j);
        std::ostringstream os;
        {
            py::gil_scoped_release nogil;
            run_sweep(s, os);
        }
        return os.str();
    });
    m.def("select_json", [](const std::string& j) {
        const Scenario s = parse_scenario(j);
        py::gil_scoped_release nogil;
        return recommendation_to_json(select_scheme(s));
    });
    m.def("crossover_json", [](const std::string& j) {
        const Scenario s = parse_scenario(j);
        py::gil_scoped_release nogil;
        return crossover_to_json(doppler_crossover(s));
    });
    m.def(
        "selftest",
        [](std::uint64_t seed) {
            py::list out;
            for (const SelftestCheck& c : run_selftest(seed))
                out.append(py::make_tuple(c.name, c.pass, c.detail));
            return out;
        },
        py::arg("seed") = 1);
}
