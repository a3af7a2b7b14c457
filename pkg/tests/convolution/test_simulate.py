#!/usr/bin/env python
# -*- coding: utf-8 -*-
# Apache Software License 2.0
#
# Copyright (c) 2024, The cylsim developers
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
# http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Tests for `cylsim.convolution.simulate` and `cylsim.convolution.path`."""
import numpy as np
import pytest

from cylsim.convolution.grid import TimeGrid
from cylsim.convolution.simulate import IntegrabilityError
from cylsim.convolution.simulate import flow_apply
from cylsim.convolution.simulate import propagate
from cylsim.convolution.simulate import require_integrable
from cylsim.convolution.simulate import riemann_stochastic_integral
from cylsim.convolution.simulate import simulate
from cylsim.convolution.simulate import simulate_batch
from cylsim.convolution.simulate import simulate_canonical
from cylsim.convolution.simulate import simulate_series
from cylsim.core.sequences import PowerSequence
from cylsim.noise.laws import CylindricalNoiseSpec
from cylsim.noise.laws import LawCycle
from cylsim.noise.laws import LawFamily
from cylsim.noise.sampling import sample_increments
from cylsim.semigroup.pair import SpectralOperatorPair

SEED = 20240611
MODES = 8


@pytest.fixture
def pair():
    return SpectralOperatorPair(PowerSequence(2.0), 1.0, 1.0, n_modes=MODES)


@pytest.fixture
def stable_spec():
    return CylindricalNoiseSpec.series(
        LawFamily("stable", alpha=1.5, scale=1.0), MODES)


@pytest.fixture
def mixed_spec():
    laws = LawCycle([LawFamily("stable", alpha=1.2, scale=1.0),
                     LawFamily("gaussian", variance=1.0),
                     LawFamily("compound_poisson", rate=5.0, jump_std=1.0)])
    return CylindricalNoiseSpec.series(laws, MODES, drift=[0.5, 0.25])


@pytest.fixture
def grid():
    return TimeGrid.uniform(1.0, 64)


def test_propagate_records():
    decay = np.full((4, 1), 0.5)
    xi = np.ones((4, 1))
    states = propagate(decay, xi, np.zeros(1), 0, 4)
    assert states[:, 0].tolist() == [0.0, 1.0, 1.5, 1.75, 1.875]
    picked = propagate(decay, xi, np.zeros(1), 1, 3, record=[3, 1])
    assert picked[:, 0].tolist() == [1.5, 0.0]
    with pytest.raises(ValueError):
        propagate(decay, xi, np.zeros(1), 3, 1)


def test_simulate_reproducible(stable_spec, pair, grid):
    first = simulate(stable_spec, pair, grid, None, SEED, 3)
    again = simulate(stable_spec, pair, grid, None, SEED, 3)
    other = simulate(stable_spec, pair, grid, None, SEED, 4)
    assert np.array_equal(first.coeffs, again.coeffs)
    assert not np.array_equal(first.coeffs, other.coeffs)
    assert first.provenance["seed"] == SEED
    assert first.provenance["stream_id"] == 3


def test_simulate_starts_at_y0(mixed_spec, pair, grid):
    path = simulate(mixed_spec, pair, grid, [1.0, -1.0], SEED, 0)
    assert path.coeffs.shape == (grid.n_steps + 1, MODES)
    assert path.value_at(0.0).tolist() == [1.0, -1.0] + [0.0] * (MODES - 2)
    assert np.all(np.isfinite(path.coeffs))


def test_drift_only_closed_form(pair, grid):
    spec = CylindricalNoiseSpec.series(
        LawFamily("stable", alpha=1.5, scale=0.0), MODES,
        drift=[1.0, 2.0])
    y0 = np.array([1.0, 0.0, 3.0])
    path = simulate(spec, pair, grid, y0, SEED, 0)
    lam = pair.lambdas
    t = grid.points[:, None]
    drift = np.zeros(MODES)
    drift[:2] = [1.0, 2.0]
    start = np.zeros(MODES)
    start[:3] = y0
    expected = (start * np.exp(-lam * t) +
                drift * pair.b * -np.expm1(-lam * t) / lam)
    assert path.coeffs == pytest.approx(expected, rel=1e-12, abs=1e-14)


def test_flow_matches_simulation(mixed_spec, pair, grid):
    path = simulate(mixed_spec, pair, grid, [1.0], SEED, 1)
    out = flow_apply(pair, mixed_spec, 0.0, 1.0, [1.0], path.increments)
    assert np.array_equal(out, path.coeffs[-1])


@pytest.mark.parametrize("s,r,t", [(0.0, 0.25, 1.0), (0.125, 0.5, 0.75),
                                   (0.5, 0.5, 1.0)])
def test_markov_split(mixed_spec, pair, grid, s, r, t):
    increments = sample_increments(mixed_spec, grid, MODES, SEED, 7)
    v = np.linspace(-1.0, 1.0, MODES)
    direct = flow_apply(pair, mixed_spec, s, t, v, increments)
    middle = flow_apply(pair, mixed_spec, s, r, v, increments)
    split = flow_apply(pair, mixed_spec, r, t, middle, increments)
    assert np.array_equal(direct, split)


def test_flow_identity(stable_spec, pair, grid):
    increments = sample_increments(stable_spec, grid, MODES, SEED, 0)
    v = np.arange(1.0, MODES + 1.0)
    assert np.array_equal(
        flow_apply(pair, stable_spec, 0.5, 0.5, v, increments), v)


def test_flow_rejects_reversed_times(stable_spec, pair, grid):
    increments = sample_increments(stable_spec, grid, MODES, SEED, 0)
    with pytest.raises(ValueError):
        flow_apply(pair, stable_spec, 0.5, 0.25, np.zeros(MODES), increments)
    with pytest.raises(ValueError):
        flow_apply(pair, stable_spec, 0.0, 0.3, np.zeros(MODES), increments)


def test_not_integrable_refused(grid):
    pair = SpectralOperatorPair(PowerSequence(1.0), 1.0, 1.0, n_modes=MODES)
    spec = CylindricalNoiseSpec.series(
        LawFamily("stable", alpha=1.0, scale=1.0), MODES)
    with pytest.raises(IntegrabilityError) as err:
        simulate(spec, pair, grid, None, SEED, 0)
    assert err.value.verdict.decision == "NotIntegrable"
    forced = simulate(spec, pair, grid, None, SEED, 0, force=True)
    assert forced.coeffs.shape == (grid.n_steps + 1, MODES)
    assert require_integrable(spec, pair, force=True) is None


def test_mode_mismatch(stable_spec, grid):
    pair = SpectralOperatorPair(PowerSequence(2.0), 1.0, 1.0, n_modes=4)
    with pytest.raises(ValueError):
        simulate_series(stable_spec, pair, grid, None, SEED, 0)


def test_simulate_series_rejects_canonical(pair, grid):
    spec = CylindricalNoiseSpec.canonical(1.5, MODES)
    with pytest.raises(ValueError):
        simulate_series(spec, pair, grid, None, SEED, 0)


def test_simulate_canonical(pair, grid):
    path = simulate_canonical(1.5, pair, grid, None, SEED, 2)
    spec = CylindricalNoiseSpec.canonical(1.5, MODES)
    same = simulate(spec, pair, grid, None, SEED, 2)
    assert np.array_equal(path.coeffs, same.coeffs)
    assert np.all(path.coeffs[0] == 0.0)


def test_simulate_batch_thread_invariant(mixed_spec, pair, grid):
    kwargs = dict(record=[0, 32, 64], modes=[0, 1, 2], chunk=16)
    single = simulate_batch(mixed_spec, pair, grid, [1.0], SEED, 40,
                            threads=1, **kwargs)
    pooled = simulate_batch(mixed_spec, pair, grid, [1.0], SEED, 40,
                            threads=3, **kwargs)
    assert single.shape == (40, 3, 3)
    assert np.array_equal(single, pooled)
    assert np.all(single[:, 0, 0] == 1.0)


def test_simulate_batch_canonical_thread_invariant(pair, grid):
    spec = CylindricalNoiseSpec.canonical(1.5, MODES)
    single = simulate_batch(spec, pair, grid, None, SEED, 20, [64],
                            chunk=8, threads=1)
    pooled = simulate_batch(spec, pair, grid, None, SEED, 20, [64],
                            chunk=8, threads=2)
    assert single.shape == (20, 1, MODES)
    assert np.array_equal(single, pooled)


def test_riemann_integral(stable_spec, grid):
    increments = sample_increments(stable_spec, grid, MODES, SEED, 0)
    ones = np.ones(grid.n_steps)
    total = riemann_stochastic_integral(ones, increments)
    scale = np.abs(increments.values[:, 0]).sum()
    assert total == pytest.approx(increments.cumulative()[-1, 0],
                                  rel=1e-12, abs=1e-12 * scale)
    with pytest.raises(ValueError):
        riemann_stochastic_integral(np.ones(3), increments)
    with pytest.raises(ValueError):
        riemann_stochastic_integral(np.ones((grid.n_steps, MODES + 1)),
                                    increments)


def test_path_accessors(stable_spec, pair, grid, tmp_path):
    path = simulate(stable_spec, pair, grid, None, SEED, 0)
    v = np.zeros(MODES)
    v[1] = 1.0
    assert np.array_equal(path.projection(v), path.coeffs[:, 1])
    assert path.n_modes == MODES
    out = path.to_csv(str(tmp_path / "path.csv"))
    with open(out) as handle:
        lines = handle.read().splitlines()
    comments = [line for line in lines if line.startswith("#")]
    assert comments[0].startswith("# spec=")
    assert lines[len(comments)] == "t,mode,coeff"
    assert len(lines) == len(comments) + 1 + (grid.n_steps + 1) * MODES
