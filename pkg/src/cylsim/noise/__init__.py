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
Cylindrical Levy noise: specifications, symbols, samplers and tail mass.
"""
from cylsim.noise.laws import COMPOUND_POISSON
from cylsim.noise.laws import GAUSSIAN
from cylsim.noise.laws import STABLE
from cylsim.noise.laws import ComponentLaw
from cylsim.noise.laws import CylindricalNoiseSpec
from cylsim.noise.laws import LawCycle
from cylsim.noise.laws import LawFamily
from cylsim.noise.laws import stable_levy_constant
from cylsim.noise.laws import stable_truncated_moment
from cylsim.noise.laws import symbol_eval
from cylsim.noise.sampling import IncrementTable
from cylsim.noise.sampling import one_dim_stable_sample
from cylsim.noise.sampling import positive_stable_samples
from cylsim.noise.sampling import sample_increments
from cylsim.noise.sampling import stable_samples
from cylsim.noise.tail import levy_tail_mass

__all__ = [
    "COMPOUND_POISSON", "GAUSSIAN", "STABLE", "ComponentLaw",
    "CylindricalNoiseSpec", "IncrementTable", "LawCycle", "LawFamily",
    "levy_tail_mass", "one_dim_stable_sample", "positive_stable_samples",
    "sample_increments", "stable_levy_constant", "stable_samples",
    "stable_truncated_moment", "symbol_eval",
]
