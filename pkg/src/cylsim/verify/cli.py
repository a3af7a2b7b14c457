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
CLI module for the verifier suites.
"""
import click

from cylsim import __version__
from cylsim.command import cmd_verify
from cylsim.core.report import EXIT_CONFIG_ERROR
from cylsim.options import finish
from cylsim.options import run
from cylsim.options import run_options
from cylsim.verify.command import VERIFIERS

HELP = {
    "cf": "Empirical characteristic function against the oracle.",
    "moments": "Second moment of the solution against the closed form.",
    "fubini": "Discretized stochastic Fubini identity and its refinement.",
    "ibp": "Integration by parts for the noise under mesh refinement.",
    "flow": "Flow composition and Markov split on shared increments.",
    "continuity": "Stochastic and mean-square continuity probes.",
    "jumpsup": "Growth of the jump supremum along the truncation level.",
    "weak": "Residual of the weak equation under mesh refinement.",
}


class UnknownVerifier(click.UsageError):
    """Usage error for a verifier name that does not exist."""
    exit_code = EXIT_CONFIG_ERROR


class VerifierGroup(click.Group):
    """Group reporting unknown verifier names as configuration errors."""

    def resolve_command(self, ctx, args):
        name = click.utils.make_str(args[0])
        if name not in self.commands and not name.startswith("-"):
            raise UnknownVerifier("unknown verifier %r, expected one of %s"
                                  % (name, ", ".join(VERIFIERS)), ctx=ctx)
        return super().resolve_command(ctx, args)


@click.group(cls=VerifierGroup)
@click.version_option(version=__version__)
def verify():
    """Numerical verification of the theory on simulated data."""


def _verifier_command(name):
    @run_options
    def command(config, seed, out, force, threads):
        report = run(lambda conf: cmd_verify(conf, name, force), config,
                     seed, threads)
        finish(report, out)
    return click.command(name=name, help=HELP[name])(command)


for _name in VERIFIERS:
    verify.add_command(_verifier_command(_name))
