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
"""Tests for `cylsim.diagnostics.paths`."""
import numpy as np
import pytest

from cylsim.convolution.grid import TimeGrid
from cylsim.convolution.path import SolutionPath
from cylsim.convolution.simulate import solve_on_increments
from cylsim.core.sequences import PowerSequence
from cylsim.diagnostics.paths import flow_identity_error
from cylsim.diagnostics.paths import jump_sup_growth
from cylsim.diagnostics.paths import jump_sup_profile
from cylsim.diagnostics.paths import jump_sup_statistic
from cylsim.diagnostics.paths import markov_split_check
from cylsim.diagnostics.paths import random_triples
from cylsim.diagnostics.paths import scalar_l2_path
from cylsim.diagnostics.paths import weak_equation_residual
from cylsim.diagnostics.paths import weak_refinement
from cylsim.noise.laws import CylindricalNoiseSpec
from cylsim.noise.laws import LawCycle
from cylsim.noise.laws import LawFamily
from cylsim.noise.sampling import sample_increments
from cylsim.semigroup.pair import SpectralOperatorPair

SEED = 3
MODES = 6


@pytest.fixture
def pair():
    return SpectralOperatorPair(PowerSequence(2.0), 1.0, 1.0, n_modes=MODES)


@pytest.fixture
def spec():
    laws = LawCycle([LawFamily("stable", alpha=1.5, scale=1.0),
                     LawFamily("compound_poisson", rate=4.0, jump_std=1.0)])
    return CylindricalNoiseSpec.series(laws, MODES)


@pytest.fixture
def table(spec):
    return sample_increments(spec, TimeGrid.uniform(1.0, 32), MODES, SEED, 0)


def test_scalar_l2_path():
    grid = TimeGrid.uniform(2.0, 4)
    coeffs = np.tile([1.0, 3.0], (5, 1))
    path = SolutionPath(grid, coeffs, coeffs[0])
    assert scalar_l2_path(path, [1.0]) == pytest.approx(2.0)
    assert scalar_l2_path(path, [0.0, 1.0]) == pytest.approx(18.0)


def test_jump_sup_profile_nondecreasing(table):
    b = np.ones(MODES)
    profile = jump_sup_profile(table, b, [1, 2, 4, 6])
    assert np.all(np.diff(profile) >= 0.0)
    expected = np.max(np.sum(table.values[:, :4] ** 2, axis=1))
    assert jump_sup_statistic(table, b, 4) == pytest.approx(expected)


@pytest.mark.parametrize("ns,b", [([0], np.ones(MODES)),
                                  ([MODES + 1], np.ones(MODES + 1)),
                                  ([], np.ones(MODES)),
                                  ([4], np.ones(3))])
def test_jump_sup_profile_arguments(table, ns, b):
    with pytest.raises(ValueError):
        jump_sup_profile(table, b, ns)


def test_jump_sup_growth(spec):
    grid = TimeGrid.uniform(1.0, 16)
    growth = jump_sup_growth(spec, grid, np.ones(MODES), [4, 1, 2], 9, SEED)
    assert growth.ns == [1, 2, 4]
    assert np.all(np.diff(growth.medians) >= 0.0)
    assert growth.ratio == pytest.approx(growth.medians[-1] /
                                         growth.medians[0])
    again = jump_sup_growth(spec, grid, np.ones(MODES), [1, 2, 4], 9, SEED)
    assert np.array_equal(again.medians, growth.medians)


def test_weak_residual_drift_only(pair):
    spec = CylindricalNoiseSpec.series(
        LawFamily("gaussian", variance=0.0), MODES, drift=[1.0, 1.0])
    table = sample_increments(spec, TimeGrid.uniform(1.0, 64), MODES, SEED,
                              0)
    rows = weak_refinement(spec, pair, table, 3)
    assert len(rows) == 4
    meshes = [row.mesh for row in rows]
    assert meshes == pytest.approx([1.0 / 8, 1.0 / 16, 1.0 / 32, 1.0 / 64])
    residuals = [row.residual for row in rows]
    assert all(a > b for a, b in zip(residuals, residuals[1:]))


def test_weak_residual_shrinks_under_noise(spec, pair):
    table = sample_increments(spec, TimeGrid.uniform(1.0, 256), MODES, SEED,
                              1)
    rows = weak_refinement(spec, pair, table, 4)
    assert rows[-1].residual < rows[0].residual
    path = solve_on_increments(spec, pair, table)
    assert weak_equation_residual(path, table, pair) == rows[-1].residual


def test_random_triples():
    triples = random_triples(17, 50, SEED)
    assert triples.shape == (50, 3)
    assert np.all(triples[:, 0] <= triples[:, 1])
    assert np.all(triples[:, 1] <= triples[:, 2])
    assert triples.min() >= 0 and triples.max() < 17
    assert np.array_equal(triples, random_triples(17, 50, SEED))


def test_flow_identity_exact(spec, pair, table):
    triples = random_triples(table.grid.n_steps + 1, 20, SEED)
    v = np.linspace(0.5, 1.5, MODES)
    assert flow_identity_error(spec, pair, table, triples, v) == 0.0


def test_markov_split_exact(spec, pair, table):
    pairs = [(0, 32), (3, 17), (16, 16), (31, 32)]
    assert markov_split_check(spec, pair, table, pairs, y0=[1.0]) == 0.0
