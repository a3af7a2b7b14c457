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
"""
Implementations of the check, simulate and report commands
"""
import logging
import math
import os

import numpy as np

from cylsim.convolution.simulate import IntegrabilityError
from cylsim.convolution.simulate import solve_on_increments
from cylsim.core.config import CylsimConfig
from cylsim.core.report import DiagnosticsReport
from cylsim.core.report import FAIL
from cylsim.core.report import PASS
from cylsim.noise.laws import GAUSSIAN
from cylsim.noise.sampling import sample_increments
from cylsim.semigroup.checks import NOT_INTEGRABLE
from cylsim.semigroup.checks import check_drift_condition
from cylsim.semigroup.checks import check_gaussian_trace
from cylsim.semigroup.checks import check_second_moment_condition
from cylsim.semigroup.checks import check_series_stable
from cylsim.semigroup.checks import integrability_verdict
from cylsim.semigroup.checks import stable_profile
from cylsim.verify.command import applicable_verifiers
from cylsim.verify.command import run_verifier


def new_report(conf: CylsimConfig) -> DiagnosticsReport:
    """Empty report echoing the merged configuration."""
    return DiagnosticsReport(conf.config_echo())


def add_existence_checks(report, spec, pair, margin, decisive=True):
    """
    Records the existence verdict (decisive) and the individual
    conditions behind it (informational).

    Returns
    -------
    CheckVerdict
        the existence verdict
    """
    logger = logging.getLogger(__name__)
    verdict = integrability_verdict(spec, pair, margin)
    report.add_verdict("integrability", verdict, margin, decisive=decisive)
    if spec.is_series():
        profile = stable_profile(spec)
        if profile is not None:
            try:
                report.add_verdict("series_stable",
                                   check_series_stable(pair, profile[1],
                                                       profile[0], margin),
                                   margin, decisive=False)
            except ValueError as err:
                logger.info("reduced stable criterion skipped: %s", err)
        if np.any(spec.columns().mask(GAUSSIAN)):
            report.add_verdict("gaussian_trace",
                               check_gaussian_trace(pair, spec, margin),
                               margin, decisive=False)
        if spec.has_weak_second_moments():
            report.add_verdict("second_moment",
                               check_second_moment_condition(pair, margin),
                               margin, decisive=False)
    if spec.drift is not None:
        report.add_verdict("drift", check_drift_condition(pair, spec, margin),
                           margin, decisive=False)
    return verdict


def cmd_check(conf):
    """
    Runs every applicable integrability checker.

    Parameters
    ----------
    conf : CylsimConfig
        run configuration

    Returns
    -------
    DiagnosticsReport
        exit code 0 for Integrable, 1 for NotIntegrable and 2 for
        Inconclusive
    """
    report = new_report(conf)
    with report.timed("check"):
        add_existence_checks(report, conf.noise_spec(),
                             conf.operator_pair(), conf.margin())
    return report


def cmd_simulate(conf, out, force=False):
    """
    Simulates one solution path and writes it to ``<out>/path.csv``.

    Parameters
    ----------
    conf : CylsimConfig
        run configuration
    out : str
        output directory
    force : bool
        simulate even when the convolution is not integrable

    Returns
    -------
    DiagnosticsReport
        the report with the existence verdict and the path record

    Raises
    ------
    IntegrabilityError
        when the configuration is not integrable and force is False
    """
    logger = logging.getLogger(__name__)
    report = new_report(conf)
    spec, pair, grid = conf.noise_spec(), conf.operator_pair(), conf.grid()
    verdict = add_existence_checks(report, spec, pair, conf.margin(),
                                   decisive=not force)
    if verdict.decision == NOT_INTEGRABLE and not force:
        raise IntegrabilityError(verdict)
    if force:
        logger.warning("integrability check overridden (--force)")
    with report.timed("simulate"):
        increments = sample_increments(spec, grid, pair.n_modes,
                                       conf.seed(), 0)
        path = solve_on_increments(spec, pair, increments, conf.y0())
    path.to_csv(os.path.join(out, "path.csv"))
    largest = float(np.max(np.abs(path.coeffs)))
    report.add("path_finite", PASS if math.isfinite(largest) else FAIL,
               largest, math.inf, "path.csv: %d times x %d modes"
               % (grid.n_steps + 1, pair.n_modes))
    return report


def cmd_verify(conf, which, force=False):
    """Runs the named verifier suite."""
    report = new_report(conf)
    run_verifier(which, conf, report, force)
    return report


def cmd_report(conf, force=False):
    """
    Integrability checks followed by every verifier that applies to the
    configured noise.
    """
    report = new_report(conf)
    with report.timed("check"):
        verdict = add_existence_checks(report, conf.noise_spec(),
                                       conf.operator_pair(), conf.margin(),
                                       decisive=not force)
    if verdict.decision == NOT_INTEGRABLE and not force:
        logging.getLogger(__name__).info("not integrable, verifiers skipped")
        return report
    for name in applicable_verifiers(conf):
        run_verifier(name, conf, report, force)
    return report
