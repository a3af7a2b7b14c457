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
Stochastic convolution: time grids, simulators and stochastic flows.
"""
from cylsim.convolution.grid import TimeGrid
from cylsim.convolution.path import SolutionPath
from cylsim.convolution.simulate import IntegrabilityError
from cylsim.convolution.simulate import flow_apply
from cylsim.convolution.simulate import propagate
from cylsim.convolution.simulate import require_integrable
from cylsim.convolution.simulate import riemann_stochastic_integral
from cylsim.convolution.simulate import simulate
from cylsim.convolution.simulate import simulate_batch
from cylsim.convolution.simulate import simulate_canonical
from cylsim.convolution.simulate import simulate_series
from cylsim.convolution.simulate import solve_on_increments

__all__ = [
    "IntegrabilityError", "SolutionPath", "TimeGrid", "flow_apply",
    "propagate", "require_integrable", "riemann_stochastic_integral",
    "simulate", "simulate_batch", "simulate_canonical", "simulate_series",
    "solve_on_increments",
]
