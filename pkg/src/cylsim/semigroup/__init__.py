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
Spectral operator pairs, semigroup evaluation and integrability checkers.
"""
from cylsim.semigroup.checks import INCONCLUSIVE
from cylsim.semigroup.checks import INTEGRABLE
from cylsim.semigroup.checks import NOT_INTEGRABLE
from cylsim.semigroup.checks import CheckVerdict
from cylsim.semigroup.checks import check_canonical
from cylsim.semigroup.checks import check_drift_condition
from cylsim.semigroup.checks import check_gaussian_trace
from cylsim.semigroup.checks import check_second_moment_condition
from cylsim.semigroup.checks import check_series_general
from cylsim.semigroup.checks import check_series_stable
from cylsim.semigroup.checks import integrability_verdict
from cylsim.semigroup.pair import SpectralOperatorPair
from cylsim.semigroup.pair import hs_norm_sq
from cylsim.semigroup.pair import semigroup_apply

__all__ = [
    "INCONCLUSIVE", "INTEGRABLE", "NOT_INTEGRABLE", "CheckVerdict",
    "SpectralOperatorPair", "check_canonical", "check_drift_condition",
    "check_gaussian_trace", "check_second_moment_condition",
    "check_series_general", "check_series_stable", "hs_norm_sq",
    "integrability_verdict", "semigroup_apply",
]
