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
Command Line Interface of cylsim.

Using the python click package (https://click.palletsprojects.com/en/7.x/),
this module defines all the entry points to the application. Every run
command writes ``report.txt`` to its output directory and exits with
0 (pass), 1 (fail), 2 (inconclusive) or 64 (configuration error).
"""
import sys

import click

from cylsim import __version__
from cylsim import command
from cylsim.options import finish
from cylsim.options import run
from cylsim.options import run_options
from cylsim.verify import cli as verify_cli


@click.group()
@click.version_option(version=__version__)
def main():
    """ Simulate and verify Ornstein-Uhlenbeck equations driven by
    cylindrical Levy noise """


@main.command()
@click.version_option(version=__version__)
def version():
    """Show the version and exit."""
    click.echo(sys.argv[0] + ', version ' + __version__)


@main.command()
@run_options
def check(config, seed, out, force, threads):
    """Decide whether the stochastic convolution exists."""
    finish(run(command.cmd_check, config, seed, threads), out)


@main.command()
@run_options
def simulate(config, seed, out, force, threads):
    """Simulate one solution path into <out>/path.csv."""
    report = run(lambda conf: command.cmd_simulate(conf, out, force),
                 config, seed, threads)
    finish(report, out)


@main.command()
@run_options
def report(config, seed, out, force, threads):
    """Run the checks and every applicable verifier."""
    result = run(lambda conf: command.cmd_report(conf, force), config,
                 seed, threads)
    finish(result, out)


main.add_command(verify_cli.verify)

if __name__ == "__main__":
    sys.exit(main())  # pragma: no cover
