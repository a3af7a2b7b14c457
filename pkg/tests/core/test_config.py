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
"""Tests for `cylsim.core.config`."""
import glob
import os

import pyhocon
import pytest

from cylsim.core.config import ConfigBoundsException
from cylsim.core.config import CylsimConfig
from cylsim.noise.laws import STABLE

MINIMAL = """
cylsim {
  noise { type = "series", laws { type = "stable", alpha = 1.5 } }
  operator {
    lambdas { type = "power", exponent = 2 }
    horizon = 1.0
    n_modes = 8
  }
}
"""


def load(text, **kwargs):
    return CylsimConfig(config=text, setup_logging=False, **kwargs)


def with_extra(extra):
    return MINIMAL + "\ncylsim { %s }\n" % extra


def test_minimal_configuration_uses_defaults():
    conf = load(MINIMAL)
    assert conf.seed() == 0
    assert conf.threads() == 1
    assert conf.grid().n_steps == 256
    assert conf.levels() == 3
    assert conf.y0() is None
    spec = conf.noise_spec()
    assert spec.is_series()
    assert spec.n_modes == 8
    assert spec.columns().kind[0] == STABLE
    assert conf.operator_pair().lambdas[-1] == 64.0
    assert conf.experiment("cf")["n_samples"] == 100000
    assert conf.config_path() is None


def test_configuration_file(tmp_path):
    path = tmp_path / "run.conf"
    path.write_text(MINIMAL)
    conf = load(str(path))
    assert conf.config_path() == str(path.resolve())
    assert "n_modes = 8" in conf.config_echo()


def test_command_line_overrides():
    conf = load(with_extra("seed = 5"), seed=9, threads=3)
    assert conf.seed() == 9
    assert conf.threads() == 3


def test_missing_required_key():
    text = """cylsim { noise { type = "series" }
                       operator { horizon = 1.0 } }"""
    with pytest.raises(pyhocon.ConfigMissingException):
        load(text)


def test_empty_configuration():
    with pytest.raises(pyhocon.ConfigMissingException):
        load("")


def test_wrong_type():
    text = MINIMAL.replace("n_modes = 8", 'n_modes = "eight"')
    with pytest.raises(pyhocon.ConfigWrongTypeException):
        load(text)


def test_integer_accepted_for_float():
    conf = load(MINIMAL.replace("horizon = 1.0", "horizon = 2"))
    assert conf.operator_pair().horizon == 2.0


def test_syntax_error():
    with pytest.raises(pyhocon.ConfigException):
        load("cylsim { noise { type = \n")


@pytest.mark.parametrize("extra, field", [
    ("threads = 0", "threads"),
    ("seed = -1", "seed"),
    ('log_level = "LOUD"', "log_level"),
    ("margin = 1.5", "margin"),
    ("grid { n_steps = 100 }", "grid.n_steps"),
    ("experiment.cf.n_samples = 1", "experiment.cf.n_samples"),
    ('experiment.fubini.integrand = "sawtooth"',
     "experiment.fubini.integrand"),
    ("experiment.fubini.weights = [1.0]", "experiment.fubini.weights"),
    ("experiment.cf.t = 2.0", "experiment.cf.t"),
    ("y0 = [1, 2, 3, 4, 5, 6, 7, 8, 9]", "y0"),
])
def test_bounds(extra, field):
    with pytest.raises(ConfigBoundsException) as err:
        load(with_extra(extra))
    assert err.value.field == field
    assert str(err.value).startswith("cylsim." + field)


def test_unknown_noise_type():
    with pytest.raises(ConfigBoundsException) as err:
        load(MINIMAL.replace('type = "series"', 'type = "white"'))
    assert err.value.field == "noise"


def test_unknown_law():
    with pytest.raises(ConfigBoundsException):
        load(MINIMAL.replace('type = "stable"', 'type = "cauchy"'))


def test_explicit_laws_and_cycle():
    text = """
    cylsim {
      noise {
        type = "series"
        cycle = [
          { type = "gaussian", variance = 2.0 },
          { type = "compound_poisson", rate = 3.0, jump_std = 0.5 }
        ]
        drift = [1.0]
      }
      operator { horizon = 1.0, n_modes = 4 }
    }
    """
    spec = load(text).noise_spec()
    cols = spec.columns()
    assert cols.variance.tolist() == [2.0, 0.0, 2.0, 0.0]
    assert cols.rate.tolist() == [0.0, 3.0, 0.0, 3.0]
    assert spec.drift_vector().tolist() == [1.0, 0.0, 0.0, 0.0]
    explicit = text.replace("cycle", "laws")
    cols = load(explicit.replace("n_modes = 4", "n_modes = 2")) \
        .noise_spec().columns()
    assert cols.jump_std.tolist() == [0.0, 0.5]


def test_canonical_noise():
    text = """
    cylsim {
      noise { type = "canonical", alpha = 1.0 }
      operator { lambdas = [1, 4, 9], b = [1, 1, 1], horizon = 1.0,
                 n_modes = 3 }
    }
    """
    spec = load(text).noise_spec()
    assert spec.is_canonical()
    assert spec.alpha == 1.0


def test_vector_accessor():
    conf = load(with_extra("experiment.flow.v = [0.0, 1.0]"))
    assert conf.vector("experiment.flow.v").tolist() == [0.0, 1.0]
    with pytest.raises(ConfigBoundsException):
        conf.vector("y0")


EXAMPLES = sorted(glob.glob(os.path.join(
    os.path.dirname(__file__), "..", "..", "resources", "example", "*.conf")))


@pytest.mark.parametrize("path", EXAMPLES, ids=os.path.basename)
def test_example_configurations_load(path):
    conf = load(path)
    assert conf.noise_spec().n_modes == conf.operator_pair().n_modes
    assert conf.grid().n_steps % 2 ** conf.levels() == 0
