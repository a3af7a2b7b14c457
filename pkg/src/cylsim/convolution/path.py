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
Simulated solution paths.
"""
from collections import OrderedDict

import numpy as np

from cylsim.core.utils import write_csv


class SolutionPath:
    """
    Coefficients <Y(t_j), h_k> of a solution on a grid skeleton.

    ...

    Attributes
    ----------
    grid : TimeGrid
        time grid of the path
    coeffs : numpy.ndarray
        [n_times x n_modes] coefficients, coeffs[0] = y0
    y0 : numpy.ndarray
        initial condition
    provenance : OrderedDict
        spec and pair identifiers, seed and stream id
    increments : IncrementTable
        the noise increments the path was built from
    """

    def __init__(self, grid, coeffs, y0, provenance=None, increments=None):
        self.grid = grid
        self.coeffs = np.asarray(coeffs, dtype=float)
        self.y0 = np.asarray(y0, dtype=float)
        if self.coeffs.shape[0] != grid.n_steps + 1:
            raise ValueError("%d states for a grid of %d points"
                             % (self.coeffs.shape[0], grid.n_steps + 1))
        self.provenance = OrderedDict(provenance or [])
        self.increments = increments

    @property
    def n_modes(self) -> int:
        return self.coeffs.shape[1]

    def value_at(self, t) -> np.ndarray:
        """Coefficients at a grid time."""
        return self.coeffs[self.grid.index_of(t)]

    def projection(self, v) -> np.ndarray:
        """<Y(t_j), v> for every grid time."""
        v = np.asarray(v, dtype=float)
        return self.coeffs[:, :v.size] @ v

    def rows(self):
        """Yields (t, mode, coeff) rows, time major."""
        for j, t in enumerate(self.grid.points):
            for k in range(self.n_modes):
                yield t, k + 1, self.coeffs[j, k]

    def to_csv(self, path):
        """Writes header ``t,mode,coeff`` after ``# key=value`` lines."""
        return write_csv(path, ["t", "mode", "coeff"], self.rows(),
                         comments=list(self.provenance.items()))
