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

"""Finite-blocklength evaluation of mini-slot OFDM pilot schemes.

Scenario functions take a dict with the CLI's JSON keys (K, T, deltaSub,
fdTs, gammaDb, B, M, schemes, nSamples, seed, ...).
"""

from __future__ import annotations

import csv
import io
import json
from typing import Any, Mapping

from . import _minislot as _core
from ._minislot import (
    InfeasiblePayload,
    NumericalError,
    awgn_capacity_dispersion,
    bessel_j0,
    dt_threshold,
    effective_snr_at,
    freq_correlation,
    normal_approx_bler,
    q_function,
    time_correlation,
)

__all__ = [
    "InfeasiblePayload",
    "NumericalError",
    "analyze_mse",
    "awgn_capacity_dispersion",
    "bessel_j0",
    "crossover",
    "dt_threshold",
    "effective_snr_at",
    "freq_correlation",
    "grid",
    "normal_approx_bler",
    "normalize_config",
    "q_function",
    "scheme_fbl",
    "select",
    "selftest",
    "sweep",
    "sweep_csv",
    "sweep_rows",
    "time_correlation",
]


def _doc(config: Mapping[str, Any] | None, overrides: dict[str, Any]) -> str:
    d = dict(config or {})
    d.update({k: v for k, v in overrides.items() if v is not None})
    return json.dumps(d)


def normalize_config(config: Mapping[str, Any] | None = None, **kw: Any) -> dict:
    """Scenario with every default filled in."""
    return json.loads(_core.normalize_config(_doc(config, kw)))


def grid(config: Mapping[str, Any] | None = None, **kw: Any) -> dict:
    return json.loads(_core.grid_json(_doc(config, kw)))


def analyze_mse(config: Mapping[str, Any] | None = None, **kw: Any) -> dict:
    """Closed-form PA estimation MSE components; scalar fdTs and gammaDb."""
    return _core.analyze_mse(_doc(config, kw))


def scheme_fbl(scheme: str, config: Mapping[str, Any] | None = None, **kw: Any) -> dict:
    return _core.scheme_fbl(_doc(config, kw), scheme)


def sweep(config: Mapping[str, Any] | None = None, **kw: Any) -> list[dict]:
    return _core.evaluate_sweep(_doc(config, kw))


def sweep_csv(config: Mapping[str, Any] | None = None, **kw: Any) -> str:
    return _core.sweep_csv(_doc(config, kw))


def sweep_rows(config: Mapping[str, Any] | None = None, **kw: Any) -> list[dict]:
    """sweep_csv parsed with the csv module."""
    return list(csv.DictReader(io.StringIO(sweep_csv(config, **kw))))


def select(config: Mapping[str, Any] | None = None, **kw: Any) -> dict:
    return json.loads(_core.select_json(_doc(config, kw)))


def crossover(config: Mapping[str, Any] | None = None, **kw: Any) -> dict:
    return json.loads(_core.crossover_json(_doc(config, kw)))


def selftest(seed: int = 1) -> list[tuple[str, bool, str]]:
    return [tuple(c) for c in _core.selftest(seed)]
