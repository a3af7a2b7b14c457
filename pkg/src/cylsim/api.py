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
API module of cylsim.

This module presents the entrypoint to use from a python script::

    from cylsim import api

    report = api.check("path/to/run.conf")
    print(report.overall())

Every function returns the DiagnosticsReport of the run without writing
it; call ``report.write(out_dir)`` to produce ``report.txt``.
"""
from cylsim import command
from cylsim.core.config import CylsimConfig


def check(config, seed=None):
    """
    Runs the integrability checkers on a configuration.

    Parameters
    ----------
    config : str
        path to the HOCON run configuration
    seed : int
        overrides cylsim.seed

    Returns
    -------
    DiagnosticsReport
        the existence verdict and the conditions behind it
    """
    return command.cmd_check(CylsimConfig(config=config, seed=seed))


def simulate(config, out, seed=None, force=False):
    """
    Simulates one path into ``<out>/path.csv``.

    Raises
    ------
    IntegrabilityError
        when the convolution does not exist and force is False
    """
    return command.cmd_simulate(CylsimConfig(config=config, seed=seed), out,
                                force)


def verify(config, which, seed=None, threads=None, force=False):
    """Runs the verifier suite ``which`` (cf, moments, fubini, ...)."""
    conf = CylsimConfig(config=config, seed=seed, threads=threads)
    return command.cmd_verify(conf, which, force)


def report(config, seed=None, threads=None, force=False):
    """Checks followed by every applicable verifier."""
    conf = CylsimConfig(config=config, seed=seed, threads=threads)
    return command.cmd_report(conf, force)
