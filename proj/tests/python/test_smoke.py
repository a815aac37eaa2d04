# SPDX-License-Identifier: Apache-2.0
#
# minislot: finite-blocklength link evaluation for mini-slot OFDM
# Copyright (C) 2026 The minislot authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
# http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
# ------------------------------------------------------------------------

import pytest

import minislot

SMALL = {"nSamples": 20000, "seed": 3}


def test_primitives():
    assert minislot.bessel_j0(0.0) == 1.0
    assert minislot.time_correlation(1, 0.0) == pytest.approx(1.0)
    assert minislot.freq_correlation(0, 64) == pytest.approx(1.0)
    c, v = minislot.awgn_capacity_dispersion(1.0)
    assert c == pytest.approx(1.0)
    assert v > 0
    assert minislot.q_function(0.0) == pytest.approx(0.5)
    assert minislot.effective_snr_at(0.0, 7.5) == 7.5


def test_normalize_fills_defaults():
    cfg = minislot.normalize_config()
    assert cfg["K"] == 64 and cfg["T"] == 2 and cfg["B"] == 64


def test_unknown_key_rejected():
    with pytest.raises(ValueError):
        minislot.normalize_config({"bogus": 1})


def test_grid_and_mse():
    g = minislot.grid(K=64, T=2)
    assert g["K"] == 64
    m = minislot.analyze_mse(K=64, fdTs=0.01, gammaDb=10)
    assert 0 < m["phi_lmmse"] < 1 and 0 < m["sigma_e2"] < 1
    assert m["phi_edge"] > m["phi_linear"]


def test_scheme_fbl_fields():
    r = minislot.scheme_fbl("FDDi", SMALL, gammaDb=5, B=32)
    assert r["scheme"] == "FDDi"
    assert 0.0 <= r["epsilon"] <= 1.0
    assert r["R"] == pytest.approx(32 / r["N"])
    assert r["epsilon"] == pytest.approx(
        minislot.normal_approx_bler(r["I"], r["V"], r["N"], r["R"]))


def test_infeasible_payload():
    with pytest.raises(minislot.InfeasiblePayload):
        minislot.scheme_fbl("PA", SMALL, B=10000, M=2)


def test_sweep_matches_csv():
    cfg = dict(SMALL, gammaDb=[0, 4], schemes=["PA", "TDDi"])
    rows = minislot.sweep(cfg)
    csv_rows = minislot.sweep_rows(cfg)
    assert len(rows) == len(csv_rows) == 4
    for r, c in zip(rows, csv_rows):
        assert c["scheme"] == r["scheme"]
        assert float(c["epsilonNA"]) == pytest.approx(r["fbl"]["epsilon"], rel=1e-9)
    pa = [r["fbl"]["epsilon"] for r in rows if r["scheme"] == "PA"]
    assert pa[1] < pa[0]


def test_sweep_deterministic():
    cfg = dict(SMALL, gammaDb=2)
    assert minislot.sweep_csv(cfg) == minislot.sweep_csv(cfg)


def test_select_and_crossover():
    rec = minislot.select(SMALL, gammaDb=2)
    assert rec["chosen"] in {"PA", "FDDi", "TDDi"}
    cx = minislot.crossover(SMALL, schemes=["PA", "FDDi"], fdTs=[0.001, 0.01, 0.05], gammaDb=2)
    assert len(cx["curve"]) == 3


def test_selftest():
    checks = minislot.selftest(1)
    assert checks and all(ok for _, ok, _ in checks)
