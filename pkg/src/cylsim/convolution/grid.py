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
Time grids 0 = t_0 < t_1 < ... < t_N = T.
"""
import numpy as np


class TimeGrid:
    """
    A strictly increasing time grid starting at 0.

    Uniform grids are built as ``T * arange(N + 1) / N`` so that the points
    of a grid are exactly every other point of its refinement.
    """

    def __init__(self, points):
        points = np.array(points, dtype=float, ndmin=1)
        if points.ndim != 1 or points.size < 2:
            raise ValueError("a time grid needs at least two points")
        if not np.all(np.isfinite(points)):
            raise ValueError("time grid points must be finite")
        if points[0] != 0.0:
            raise ValueError("time grids start at 0, got %s" % points[0])
        if np.any(np.diff(points) <= 0.0):
            raise ValueError("time grid points must be strictly increasing")
        points.setflags(write=False)
        self.points = points

    @classmethod
    def uniform(cls, horizon, n_steps):
        """N equal steps on [0, horizon]."""
        n_steps = int(n_steps)
        if n_steps < 1:
            raise ValueError("a grid needs at least one step, got %s"
                             % n_steps)
        horizon = float(horizon)
        if not horizon > 0.0:
            raise ValueError("grid horizon must be positive, got %s"
                             % horizon)
        return cls(horizon * np.arange(n_steps + 1) / n_steps)

    @classmethod
    def from_points(cls, points):
        """
        Grid through the given times, 0 added, duplicates (up to a
        relative 1e-12) removed.
        """
        points = np.unique(np.concatenate(([0.0],
                                           np.asarray(points, float))))
        gaps = np.diff(points) > 1e-12 * max(1.0, points[-1])
        return cls(points[np.concatenate(([True], gaps))])

    @property
    def n_steps(self) -> int:
        return self.points.size - 1

    @property
    def horizon(self) -> float:
        return float(self.points[-1])

    def steps(self) -> np.ndarray:
        """Step lengths t_{j+1} - t_j."""
        return np.diff(self.points)

    def is_uniform(self) -> bool:
        steps = self.steps()
        return bool(np.allclose(steps, steps[0], rtol=1e-12, atol=0.0))

    def index_of(self, t) -> int:
        """
        Index j with t_j = t.

        Raises
        ------
        ValueError
            when t is not a grid point (relative tolerance 1e-12)
        """
        t = float(t)
        j = int(np.argmin(np.abs(self.points - t)))
        if abs(self.points[j] - t) > 1e-12 * max(1.0, self.horizon):
            raise ValueError("time %s is not on the grid" % t)
        return j

    def refine(self):
        """Grid with the midpoint of every step inserted."""
        if self.is_uniform():
            return TimeGrid.uniform(self.horizon, 2 * self.n_steps)
        mid = 0.5 * (self.points[:-1] + self.points[1:])
        points = np.empty(2 * self.n_steps + 1)
        points[0::2] = self.points
        points[1::2] = mid
        return TimeGrid(points)

    def coarsen(self):
        """Grid with every other point removed."""
        if self.n_steps % 2:
            raise ValueError("cannot coarsen a grid of %d steps"
                             % self.n_steps)
        return TimeGrid(self.points[0::2])

    def __eq__(self, other):
        return (isinstance(other, TimeGrid) and
                np.array_equal(self.points, other.points))

    def __hash__(self):
        return hash(self.points.tobytes())

    def __repr__(self):
        return "TimeGrid(N=%d, T=%r)" % (self.n_steps, self.horizon)
