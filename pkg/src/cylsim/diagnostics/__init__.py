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
Distributional and pathwise diagnostics of the mild solution.
"""
from cylsim.diagnostics.cf import CfComparison
from cylsim.diagnostics.cf import analytic_cf
from cylsim.diagnostics.cf import cf_match
from cylsim.diagnostics.cf import default_beta_grid
from cylsim.diagnostics.cf import empirical_cf
from cylsim.diagnostics.cf import scheme_cf
from cylsim.diagnostics.moments import MomentComparison
from cylsim.diagnostics.moments import mean_square_modulus
from cylsim.diagnostics.moments import second_moment_analytic
from cylsim.diagnostics.moments import second_moment_empirical
from cylsim.diagnostics.moments import stochastic_continuity_probe
from cylsim.diagnostics.paths import flow_identity_error
from cylsim.diagnostics.paths import jump_sup_growth
from cylsim.diagnostics.paths import jump_sup_statistic
from cylsim.diagnostics.paths import markov_split_check
from cylsim.diagnostics.paths import scalar_l2_path
from cylsim.diagnostics.paths import weak_equation_residual

__all__ = [
    "CfComparison", "MomentComparison", "analytic_cf", "cf_match",
    "default_beta_grid", "empirical_cf", "flow_identity_error",
    "jump_sup_growth", "jump_sup_statistic", "markov_split_check",
    "mean_square_modulus", "scalar_l2_path", "scheme_cf",
    "second_moment_analytic", "second_moment_empirical",
    "stochastic_continuity_probe", "weak_equation_residual",
]
