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
Options and run plumbing shared by the cylsim commands.
"""
import functools
import logging
import sys

import click
import pyhocon

from cylsim.convolution.simulate import IntegrabilityError
from cylsim.core.config import CylsimConfig
from cylsim.core.report import EXIT_CONFIG_ERROR
from cylsim.core.report import EXIT_FAIL

DEFAULT_OUT = "cylsim-out"


def run_options(func):
    """Adds --config, --seed, --out, --force and --threads to a command."""
    @click.option('--config', 'config', required=True,
                  type=click.Path(exists=True, dir_okay=False),
                  help="HOCON run configuration", metavar='<PATH>')
    @click.option('--seed', type=int, default=None,
                  help="overrides cylsim.seed", metavar='<INT>')
    @click.option('--out', 'out', type=click.Path(file_okay=False),
                  default=DEFAULT_OUT, show_default=True,
                  help="output directory", metavar='<DIR>')
    @click.option('--force', is_flag=True, default=False,
                  help="simulate even when the convolution is not "
                       "integrable")
    @click.option('--threads', type=int, default=None,
                  help="overrides cylsim.threads", metavar='<N>')
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        return func(*args, **kwargs)
    return wrapper


def run(action, config, seed, threads):
    """
    Loads the configuration, runs action(conf) and maps configuration
    errors to exit code 64 and non-integrable configurations to 1.

    Returns
    -------
    the result of action
    """
    try:
        conf = CylsimConfig(config=config, seed=seed, threads=threads)
        return action(conf)
    except pyhocon.ConfigException as err:
        click.echo("configuration error: %s" % err, err=True)
        sys.exit(EXIT_CONFIG_ERROR)
    except IntegrabilityError as err:
        click.echo(str(err), err=True)
        sys.exit(EXIT_FAIL)


def finish(report, out):
    """Writes the report to out, echoes the verdict and exits with it."""
    path = report.write(out)
    logger = logging.getLogger(__name__)
    logger.info("overall verdict %s", report.overall())
    click.echo(path)
    click.echo("verdict=" + report.overall())
    sys.exit(report.exit_code())
