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
"""Tests for `cylsim.noise.laws` and `cylsim.noise.tail`."""
import math

import numpy as np
import pytest

from cylsim.core.sequences import PowerSequence
from cylsim.noise.laws import ComponentLaw
from cylsim.noise.laws import CylindricalNoiseSpec
from cylsim.noise.laws import LawFamily
from cylsim.noise.laws import stable_cos_integral
from cylsim.noise.laws import stable_levy_constant
from cylsim.noise.laws import stable_truncated_moment
from cylsim.noise.laws import symbol_eval
from cylsim.noise.tail import levy_tail_mass


def test_component_symbols():
    assert ComponentLaw.stable(1.5, 2.0).symbol(1.0) == pytest.approx(
        -2.0 ** 1.5)
    assert ComponentLaw.gaussian(2.0).symbol(1.0) == -1.0
    poisson = ComponentLaw.compound_poisson(rate=3.0, jump_std=1.0)
    assert poisson.symbol(2.0) == pytest.approx(3.0 * (math.exp(-2.0) - 1))


@pytest.mark.parametrize("factory", [
    lambda: ComponentLaw.stable(2.0),
    lambda: ComponentLaw.stable(0.0),
    lambda: ComponentLaw.stable(1.0, scale=-1.0),
    lambda: ComponentLaw.gaussian(math.inf),
    lambda: ComponentLaw("cauchy"),
], ids=["stable-alpha2", "stable-alpha0", "stable-negscale",
        "gaussian-inf", "unknown-kind"])
def test_invalid_laws(factory):
    with pytest.raises(ValueError):
        factory()


def test_degenerate_laws():
    assert ComponentLaw.stable(1.0, scale=0.0).is_degenerate()
    assert ComponentLaw.compound_poisson(rate=0.0).is_degenerate()
    assert not ComponentLaw.gaussian(1.0).is_degenerate()


def test_canonical_symbol_is_isotropic():
    spec = CylindricalNoiseSpec.canonical(1.0, 3)
    assert symbol_eval(spec, [3.0, 4.0]) == complex(-5.0, 0.0)
    assert symbol_eval(spec, [0.0, 0.0, 0.0]) == 0j


def test_series_symbol_with_drift():
    spec = CylindricalNoiseSpec.series([ComponentLaw.gaussian(1.0),
                                        ComponentLaw.stable(1.0, 2.0)], 2,
                                       drift=[2.0, 1.0])
    assert symbol_eval(spec, [1.0]) == complex(-0.5, 2.0)
    assert symbol_eval(spec, [1.0, 1.0]) == complex(-2.5, 3.0)
    with pytest.raises(ValueError):
        symbol_eval(spec, [1.0, 1.0, 1.0])


def test_law_family_columns():
    family = LawFamily("gaussian", variance=PowerSequence(-2.0))
    np.testing.assert_allclose(family.columns(3).variance,
                               [1.0, 0.25, 1.0 / 9.0])
    assert family.columns(3).scale.tolist() == [0.0, 0.0, 0.0]


def test_spec_needs_enough_laws():
    with pytest.raises(ValueError):
        CylindricalNoiseSpec.series([ComponentLaw.gaussian()], 2)


def test_moment_classification():
    gaussian = CylindricalNoiseSpec.series(LawFamily("gaussian"), 4)
    stable = CylindricalNoiseSpec.series(LawFamily("stable", alpha=1.2), 4)
    silent = CylindricalNoiseSpec.series(
        LawFamily("stable", alpha=1.2, scale=0.0), 4, drift=[1.0])
    assert gaussian.has_weak_second_moments()
    assert not stable.has_weak_second_moments()
    assert silent.has_weak_second_moments()
    assert silent.is_deterministic()
    assert not gaussian.is_deterministic()
    assert not CylindricalNoiseSpec.canonical(1.0, 2) \
        .has_weak_second_moments()


def test_fingerprint():
    first = CylindricalNoiseSpec.canonical(1.0, 2)
    assert first.fingerprint() == CylindricalNoiseSpec.canonical(1.0, 2) \
        .fingerprint()
    assert first.fingerprint() != CylindricalNoiseSpec.canonical(1.5, 2) \
        .fingerprint()


@pytest.mark.parametrize("alpha", [0.5, 0.9, 1.0, 1.3, 1.8])
def test_stable_levy_constant_matches_closed_form(alpha):
    expected = 1.0 / (alpha * stable_cos_integral(alpha))
    assert stable_levy_constant(alpha) == pytest.approx(expected, rel=1e-7)


def test_stable_truncated_moment_scaling():
    unit = stable_truncated_moment(1.5)
    assert stable_truncated_moment(1.5, 2.0) == pytest.approx(
        2.0 ** 1.5 * unit)


def test_tail_mass_one_mode_is_one_dimensional_tail():
    for alpha in (0.5, 1.0, 1.5):
        spec = CylindricalNoiseSpec.canonical(alpha, 4)
        assert levy_tail_mass(spec, np.ones(4), 1.0, 1) == pytest.approx(
            stable_levy_constant(alpha))
        assert levy_tail_mass(spec, np.ones(4), 4.0, 1) == pytest.approx(
            stable_levy_constant(alpha) * 2.0 ** -alpha)


@pytest.mark.parametrize("alpha", [0.5, 1.0, 1.5])
def test_tail_mass_level_is_a_squared_radius(alpha):
    canonical = CylindricalNoiseSpec.canonical(alpha, 1)
    series = CylindricalNoiseSpec.series([ComponentLaw.stable(alpha)], 1)
    for c in (0.25, 9.0):
        expected = stable_levy_constant(alpha) * math.sqrt(c) ** -alpha
        assert levy_tail_mass(canonical, [1.0], c, 1) == pytest.approx(
            expected)
        assert levy_tail_mass(series, [1.0], c, 1) == pytest.approx(
            expected)


@pytest.mark.parametrize("alpha", [0.5, 1.0, 1.5])
def test_tail_mass_growth(alpha):
    n = 1024
    spec = CylindricalNoiseSpec.canonical(alpha, 2 * n)
    b = np.ones(2 * n)
    ratio = (levy_tail_mass(spec, b, 1.0, 2 * n) /
             levy_tail_mass(spec, b, 1.0, n))
    assert abs(ratio / 2.0 ** (alpha / 2.0) - 1.0) < 0.05
    masses = [levy_tail_mass(spec, b, 1.0, k) for k in (1, 4, 16, 64)]
    assert np.all(np.diff(masses) > 0.0)


def test_tail_mass_series():
    cauchy = CylindricalNoiseSpec.series([ComponentLaw.stable(1.0)], 1)
    assert levy_tail_mass(cauchy, [1.0], 1.0, 1) == pytest.approx(
        2.0 / math.pi)
    poisson = CylindricalNoiseSpec.series(
        [ComponentLaw.compound_poisson(rate=2.0, jump_std=1.0),
         ComponentLaw.gaussian(5.0)], 2)
    assert levy_tail_mass(poisson, [1.0, 1.0], 1.0, 2) == pytest.approx(
        2.0 * 0.31731050786291415)
    gaussian = CylindricalNoiseSpec.series(LawFamily("gaussian"), 3)
    assert levy_tail_mass(gaussian, np.ones(3), 1.0, 3) == 0.0


def test_tail_mass_arguments():
    spec = CylindricalNoiseSpec.canonical(1.0, 2)
    with pytest.raises(ValueError):
        levy_tail_mass(spec, [2.0, 1.0], 1.0, 2)
    with pytest.raises(ValueError):
        levy_tail_mass(spec, [1.0, 1.0], 0.0, 1)
    with pytest.raises(ValueError):
        levy_tail_mass(spec, [1.0, 1.0], 1.0, 3)
