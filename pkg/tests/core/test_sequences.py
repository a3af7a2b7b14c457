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
"""Tests for `cylsim.core.sequences`."""
import math

import numpy as np
import pyhocon
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cylsim.core.sequences import ConstantSequence
from cylsim.core.sequences import ExplicitSequence
from cylsim.core.sequences import LogSequence
from cylsim.core.sequences import PowerSequence
from cylsim.core.sequences import as_sequence
from cylsim.core.sequences import sequence_from_config


def test_power_sequence():
    assert PowerSequence(2.0).values(3).tolist() == [1.0, 4.0, 9.0]
    seq = PowerSequence(-1.0, factor=2.0, offset=1.0)
    np.testing.assert_allclose(seq.values(2), [1.0, 2.0 / 3.0])
    assert seq.length is None


def test_power_sequence_offset_guard():
    with pytest.raises(ValueError):
        PowerSequence(1.0, offset=-1.0)


def test_log_sequence():
    np.testing.assert_allclose(LogSequence().values(2),
                               [math.log(2.0), math.log(3.0)])


def test_explicit_sequence_is_finite():
    seq = ExplicitSequence([1, 2])
    assert seq.is_finite()
    assert seq.available(5) == 2
    with pytest.raises(ValueError):
        seq.values(3)


def test_explicit_sequence_fill():
    seq = ExplicitSequence([1, 2], fill=0.0)
    assert not seq.is_finite()
    assert seq.values(4).tolist() == [1.0, 2.0, 0.0, 0.0]


@given(st.floats(-1e6, 1e6), st.integers(0, 64))
def test_constant_sequence(value, n):
    values = ConstantSequence(value).values(n)
    assert values.shape == (n,)
    assert np.all(values == value)


def test_as_sequence_passthrough():
    seq = PowerSequence(1.0)
    assert as_sequence(seq) is seq
    assert isinstance(as_sequence(3), ConstantSequence)
    assert isinstance(as_sequence([1.0]), ExplicitSequence)


def test_sequence_from_config():
    tree = pyhocon.ConfigFactory.parse_string("""
        lam { type = "power", exponent = 2 }
        b { type = "log", factor = 0.5 }
        a { type = "explicit", values = [1, 2], fill = 0 }
        c { type = "constant", value = 3 }
        d = [1, 2, 3]
        e = 1.5
    """)
    assert sequence_from_config(tree["lam"]).values(2).tolist() == [1.0, 4.0]
    np.testing.assert_allclose(sequence_from_config(tree["b"]).values(1),
                               [0.5 * math.log(2.0)])
    assert sequence_from_config(tree["a"]).values(3).tolist() == [1, 2, 0]
    assert sequence_from_config(tree["c"]).values(2).tolist() == [3.0, 3.0]
    assert sequence_from_config(tree["d"]).length == 3
    assert sequence_from_config(tree["e"]).values(1).tolist() == [1.5]


def test_sequence_from_config_unknown_type():
    tree = pyhocon.ConfigFactory.parse_string('x { type = "fourier" }')
    with pytest.raises(ValueError):
        sequence_from_config(tree["x"])
