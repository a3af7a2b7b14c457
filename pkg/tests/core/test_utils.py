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
"""Tests for `cylsim.core.quadrature` and `cylsim.core.utils`."""
import math

import numpy as np
import pytest

from cylsim.core.quadrature import QuadratureError
from cylsim.core.quadrature import integrate_scalar
from cylsim.core.quadrature import integrate_vector
from cylsim.core.utils import as_vector
from cylsim.core.utils import fmt
from cylsim.core.utils import fsum
from cylsim.core.utils import nonincreasing
from cylsim.core.utils import pad
from cylsim.core.utils import write_csv


def test_integrate_scalar():
    value, error = integrate_scalar(np.cos, 0.0, math.pi / 2.0)
    assert abs(value - 1.0) < 1e-10
    assert error < 1e-10


def test_integrate_scalar_reports_failure():
    with pytest.raises(QuadratureError):
        integrate_scalar(lambda x: math.nan, 0.0, 1.0)


def test_integrate_vector():
    value = integrate_vector(lambda x: np.array([x, x * x]), 0.0, 1.0)
    np.testing.assert_allclose(value, [0.5, 1.0 / 3.0], atol=1e-10)


def test_integrate_scalar_with_breakpoints():
    value, _ = integrate_scalar(lambda x: abs(x - 0.3), 0.0, 1.0,
                                points=[0.3])
    assert value == pytest.approx(0.29, abs=1e-10)


def test_fmt_uses_17_digits():
    assert fmt(0.1) == "0.10000000000000001"
    assert fmt(2) == "2"


def test_fsum_is_compensated():
    assert fsum([1e16, 1.0, -1e16]) == 1.0


def test_as_vector_and_pad():
    assert pad(as_vector([1, 2]), 4).tolist() == [1.0, 2.0, 0.0, 0.0]
    assert pad(as_vector([1, 2, 3]), 2).tolist() == [1.0, 2.0]
    with pytest.raises(ValueError):
        as_vector([1.0, math.inf])
    with pytest.raises(ValueError):
        as_vector([1.0, 2.0], length=1)
    with pytest.raises(ValueError):
        as_vector([[1.0]])


def test_nonincreasing():
    assert nonincreasing([3.0, 2.0, 1.0])
    assert not nonincreasing([1.0, 2.0])
    assert nonincreasing([1.0, 1.1], slack=0.2)
    assert nonincreasing([0.0, 1e-13], floor=1e-12)


def test_write_csv(tmp_path):
    path = write_csv(str(tmp_path / "sub" / "out.csv"), ["a", "b"],
                     [(1, 0.5), (np.int64(2), np.float64(0.1))],
                     comments=[("seed", 3)])
    with open(path) as content:
        assert content.read() == ("# seed=3\na,b\n1,0.5\n"
                                  "2,0.10000000000000001\n")
