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
"""Tests for `cylsim.api`."""
import os

import pytest

from cylsim import api
from cylsim.convolution.simulate import IntegrabilityError
from cylsim.core.report import FAIL
from cylsim.core.report import PASS

RUN = """
cylsim {
  log_level = "ERROR"
  noise {
    type = "series"
    cycle = [
      { type = "stable", alpha = 1.2 }
      { type = "compound_poisson", rate = 2.0, jump_std = 0.5 }
    ]
  }
  operator {
    lambdas { type = "power", exponent = %s }
    horizon = 1.0
    n_modes = 4
  }
  grid { n_steps = 16, levels = 1 }
  experiment { flow { triples = 5 } }
}
"""


@pytest.fixture
def config(tmp_path):
    path = tmp_path / "run.conf"
    path.write_text(RUN % 2)
    return str(path)


def test_check(config):
    report = api.check(config)
    assert report.overall() == PASS
    names = [record.name for record in report.records]
    assert names[0] == "integrability"
    assert report.exit_code() == 0


def test_check_accepts_plain_text():
    report = api.check(RUN % 1)
    assert report.overall() == FAIL
    assert report.exit_code() == 1


def test_simulate(config, tmp_path):
    out = str(tmp_path / "out")
    report = api.simulate(config, out, seed=4)
    assert report.overall() == PASS
    assert os.path.isfile(os.path.join(out, "path.csv"))
    assert not os.path.exists(os.path.join(out, "report.txt"))


def test_simulate_not_integrable(tmp_path):
    with pytest.raises(IntegrabilityError):
        api.simulate(RUN % 1, str(tmp_path / "out"))


def test_verify_and_write(config, tmp_path):
    report = api.verify(config, "flow", seed=1, threads=2)
    assert report.overall() == PASS
    path = report.write(str(tmp_path / "out"))
    with open(path) as handle:
        assert "flow_identity,pass" in handle.read()


def test_seed_changes_paths(config, tmp_path):
    texts = []
    for seed in (1, 1, 2):
        out = str(tmp_path / ("seed%d_%d" % (seed, len(texts))))
        api.simulate(config, out, seed=seed)
        with open(os.path.join(out, "path.csv")) as handle:
            texts.append(handle.read())
    assert texts[0] == texts[1]
    assert texts[0] != texts[2]
