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
Numerical verification of the stochastic Fubini identity and of
integration by parts.
"""
from cylsim.fubini.integrand import REGULATED
from cylsim.fubini.integrand import SIMPLE
from cylsim.fubini.integrand import TwoParameterIntegrand
from cylsim.fubini.integrand import build_g_mn
from cylsim.fubini.integrand import sup_distance
from cylsim.fubini.verify import FubiniResult
from cylsim.fubini.verify import IbpResult
from cylsim.fubini.verify import fubini_refinement
from cylsim.fubini.verify import ibp_refinement
from cylsim.fubini.verify import refinement_slope
from cylsim.fubini.verify import verify_fubini
from cylsim.fubini.verify import verify_integration_by_parts

__all__ = [
    "REGULATED", "SIMPLE", "FubiniResult", "IbpResult",
    "TwoParameterIntegrand", "build_g_mn", "fubini_refinement",
    "ibp_refinement", "refinement_slope", "sup_distance", "verify_fubini",
    "verify_integration_by_parts",
]
