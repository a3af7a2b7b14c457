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
"""Tests for `cylsim.verify.command`."""
import pytest

from cylsim.convolution.simulate import IntegrabilityError
from cylsim.core.config import ConfigBoundsException
from cylsim.core.config import CylsimConfig
from cylsim.core.report import FAIL
from cylsim.core.report import INCONCLUSIVE
from cylsim.core.report import PASS
from cylsim.core.report import DiagnosticsReport
from cylsim.verify.command import VERIFIERS
from cylsim.verify.command import applicable_verifiers
from cylsim.verify.command import fubini_integrand
from cylsim.verify.command import jumpsup_truncations
from cylsim.verify.command import run_verifier

OPERATOR = """
  operator {
    lambdas { type = "power", exponent = 2 }
    horizon = 1.0
    n_modes = 8
  }
  grid { n_steps = 64, levels = 2 }
  experiment {
    cf {
      n_samples = 2000, beta_min = -2.0, beta_max = 2.0, beta_points = 21
    }
    moments { times = [0.5], n_samples = 2000 }
    ibp { trials = 4, min_decreasing = 2 }
    flow { triples = 20 }
    continuity { n_samples = 1000 }
    jumpsup { ns = [2, 8], n_seeds = 15 }
  }
"""

GAUSSIAN = """
cylsim {
  noise {
    type = "series"
    laws { type = "gaussian", variance { type = "power", exponent = -4 } }
  }
%s
}
""" % OPERATOR

STABLE = """
cylsim {
  noise { type = "series", laws { type = "stable", alpha = 1.5 } }
%s
}
""" % OPERATOR

CANONICAL = """
cylsim {
  noise { type = "canonical", alpha = 1.5 }
%s
}
""" % OPERATOR

DRIFT_ONLY = """
cylsim {
  noise {
    type = "series"
    laws { type = "gaussian", variance = 0.0 }
    drift = [1.0]
  }
%s
}
""" % OPERATOR


def load(text, extra=""):
    if extra:
        text += "\ncylsim { %s }\n" % extra
    return CylsimConfig(config=text, setup_logging=False)


def run(name, text, extra=""):
    return run_verifier(name, load(text, extra), DiagnosticsReport())


def records(report):
    return {record.name: record for record in report.records}


def test_verifier_names():
    assert list(VERIFIERS) == ["cf", "moments", "fubini", "ibp", "flow",
                               "continuity", "jumpsup", "weak"]


def test_applicable_verifiers():
    assert applicable_verifiers(load(GAUSSIAN)) == list(VERIFIERS)
    stable = applicable_verifiers(load(STABLE))
    assert "moments" not in stable
    assert "jumpsup" in stable
    narrow = applicable_verifiers(load(GAUSSIAN,
                                       "experiment.jumpsup.ns = [8, 16]"))
    assert "jumpsup" not in narrow


def test_jumpsup_truncations_drops_wide():
    conf = load(GAUSSIAN, "experiment.jumpsup.ns = [16, 2, 4]")
    assert jumpsup_truncations(conf) == [2, 4]


def test_cf_series():
    report = run("cf", GAUSSIAN)
    record = records(report)["cf_sup_distance"]
    assert record.statistic <= record.threshold
    header, rows = report.sections["cf"]
    assert header[0] == "beta"
    assert len(rows) == 21


def test_cf_canonical_refinement():
    report = run("cf", CANONICAL)
    found = records(report)
    for level in (1, 2):
        ratio = found["cf_scheme_ratio_%d" % level]
        assert ratio.status == PASS
        assert 1.4 <= ratio.statistic <= 2.6
    assert "cf_scheme_sup_distance" in found
    assert len(report.sections["cf_refinement"][1]) == 3


def test_cf_canonical_without_levels():
    report = run("cf", CANONICAL, "grid.levels = 0")
    assert records(report)["cf_scheme_rate"].status == INCONCLUSIVE


def test_moments():
    report = run("moments", GAUSSIAN)
    record = records(report)["second_moment_t=0.5"]
    assert record.status == PASS
    header, rows = report.sections["moments"]
    assert header[1] == "analytic"
    assert rows[0][0] == 0.5


def test_moments_rejects_stable():
    with pytest.raises(ValueError):
        run("moments", STABLE)


def test_fubini_exact():
    report = run("fubini", STABLE)
    found = records(report)
    assert found["fubini_simple"].status == PASS
    assert found["fubini_regulated"].status == PASS
    assert "fubini_refinement" in found
    assert len(report.sections["fubini"][1]) == 2


def test_fubini_integrand_kinds():
    indicator = fubini_integrand(load(GAUSSIAN))
    assert indicator.n_modes == 4
    assert indicator.values(0.5, [0.25, 0.75])[:, 1].tolist() == [0.5, 0.0]
    exponential = fubini_integrand(
        load(GAUSSIAN, 'experiment.fubini.integrand = "exponential"'))
    assert exponential.values(0.0, [1.0])[0, 0] == 1.0


def test_ibp_constant():
    report = run("ibp", STABLE, 'experiment.ibp.tau = "constant"')
    assert records(report)["ibp_constant"].status == PASS


def test_ibp_drift_only_slope():
    report = run("ibp", DRIFT_ONLY, 'experiment.ibp.tau = "linear"')
    record = records(report)["ibp_slope"]
    assert record.status == PASS
    assert record.statistic == pytest.approx(1.0, abs=1e-6)


def test_ibp_random():
    report = run("ibp", GAUSSIAN)
    record = records(report)["ibp_decreasing"]
    assert record.threshold == 2
    assert len(report.sections["ibp"][1]) == 4 * 3


def test_flow():
    report = run("flow", STABLE)
    found = records(report)
    assert found["flow_identity"].status == PASS
    assert found["flow_identity"].statistic == 0.0
    assert found["markov_split"].statistic == 0.0


def test_continuity_series():
    gaussian = records(run("continuity", GAUSSIAN))
    assert set(gaussian) == {"continuity_probe", "mean_square_modulus"}
    stable = records(run("continuity", STABLE))
    assert set(stable) == {"continuity_probe"}


def test_jumpsup_stable_increases():
    record = records(run("jumpsup", STABLE))["jumpsup_increasing"]
    assert record.status == PASS
    assert record.statistic > 1.0


def test_jumpsup_gaussian_bounded():
    record = records(run("jumpsup", GAUSSIAN))["jumpsup_bounded"]
    assert record.status == PASS


def test_jumpsup_canonical_tail_growth():
    found = records(run("jumpsup", CANONICAL))
    assert found["tail_mass_growth"].status == PASS
    assert "jumpsup_increasing" in found


def test_jumpsup_needs_two_truncations():
    with pytest.raises(ConfigBoundsException) as err:
        run("jumpsup", GAUSSIAN, "experiment.jumpsup.ns = [8, 16]")
    assert err.value.field == "experiment.jumpsup.ns"


def test_weak():
    report = run("weak", GAUSSIAN)
    assert records(report)["weak_equation"].status == PASS
    assert len(report.sections["weak"][1]) == 3


def test_weak_without_levels():
    report = run("weak", GAUSSIAN, "grid.levels = 0")
    assert records(report)["weak_equation"].status == INCONCLUSIVE
    assert report.overall() == INCONCLUSIVE


def test_not_integrable_is_refused():
    text = STABLE.replace("exponent = 2", "exponent = 1")
    report = DiagnosticsReport()
    conf = load(text, "experiment.flow.triples = 2")
    with pytest.raises(IntegrabilityError):
        run_verifier("flow", conf, report)
    forced = run_verifier("flow", conf, DiagnosticsReport(), force=True)
    assert forced.overall() in (PASS, FAIL)


def test_unknown_verifier():
    with pytest.raises(ValueError):
        run_verifier("nope", load(GAUSSIAN), DiagnosticsReport())
