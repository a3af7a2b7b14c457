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
Integrands g(s, t) over a finite weighted set S and their discretizations.
"""
import numpy as np

from cylsim.core.utils import as_vector

SIMPLE = "simple"
REGULATED = "regulated"


class TwoParameterIntegrand:
    """
    Truncated vector integrand g(s, t) with s in a finite set S carrying
    weights eta(s) >= 0 and t in [0, T].

    ``func(s, t)`` receives one point of S and a 1-d array of times and
    returns the first ``n_modes`` coordinates of g, an array broadcastable
    to ``(t.size, n_modes)``.

    Simple integrands are constant on the open intervals of ``partition``;
    on a time grid they are sampled at step midpoints. Regulated integrands
    are sampled at the left point of every step.

    Parameters
    ----------
    func : callable
        evaluation rule (s, t) -> coordinates
    s_points : array-like
        the points of S
    weights : array-like
        eta(s) for every point of S
    n_modes : int
        number of coordinates of g
    regularity : str
        ``simple`` or ``regulated``
    partition : TimeGrid
        partition of a simple integrand, None otherwise
    """

    def __init__(self, func, s_points, weights, n_modes, regularity=REGULATED,
                 partition=None):
        self.func = func
        self.s_points = as_vector(s_points, "s_points")
        self.weights = as_vector(weights, "weights")
        if self.weights.size != self.s_points.size:
            raise ValueError("%d weights for %d points of S"
                             % (self.weights.size, self.s_points.size))
        if np.any(self.weights < 0.0):
            raise ValueError("weights must be nonnegative, got %s"
                             % self.weights)
        self.n_modes = int(n_modes)
        if self.n_modes < 0:
            raise ValueError("n_modes must be nonnegative, got %s" % n_modes)
        if regularity not in (SIMPLE, REGULATED):
            raise ValueError("unknown regularity %r" % regularity)
        if regularity == SIMPLE and partition is None:
            raise ValueError("a simple integrand needs its partition")
        self.regularity = regularity
        self.partition = partition

    def values(self, s, t) -> np.ndarray:
        """Coordinates of g(s, t) for every time in t, shape (K, n_modes)."""
        t = np.atleast_1d(np.asarray(t, dtype=float))
        out = np.asarray(self.func(s, t), dtype=float)
        try:
            return np.broadcast_to(out, (t.size, self.n_modes)).copy()
        except ValueError:
            raise ValueError("integrand returned shape %s, expected (%d, %d)"
                             % (out.shape, t.size, self.n_modes))

    def step_values(self, s, grid) -> np.ndarray:
        """
        Values of g(s, .) on the steps of a grid, shape (N, n_modes).

        Midpoint values for simple integrands, left-point values for
        regulated ones.
        """
        points = grid.points
        if self.regularity == SIMPLE:
            return self.values(s, 0.5 * (points[:-1] + points[1:]))
        return self.values(s, points[:-1])

    def weighted_step_values(self, grid) -> np.ndarray:
        """sum_s eta(s) g(s, .) on the steps of a grid."""
        total = np.zeros((grid.n_steps, self.n_modes))
        for s, weight in zip(self.s_points, self.weights):
            total += weight * self.step_values(s, grid)
        return total

    def scaled(self, factor):
        """The same integrand with weights multiplied by factor."""
        return TwoParameterIntegrand(self.func, self.s_points,
                                     factor * self.weights, self.n_modes,
                                     self.regularity, self.partition)

    def __repr__(self):
        return "TwoParameterIntegrand(%s, |S|=%d, n_modes=%d)" % (
            self.regularity, self.s_points.size, self.n_modes)


def build_g_mn(g, m, partition) -> TwoParameterIntegrand:
    """
    Mode-truncated, piecewise-constant approximation of g.

    The result keeps the first m coordinates of g; on every open interval
    of the partition it takes the value of g at the interval midpoint and
    at every partition point the value of g there.

    Parameters
    ----------
    g : TwoParameterIntegrand
        the integrand
    m : int
        number of coordinates kept, 0 <= m <= g.n_modes
    partition : TimeGrid
        partition of [0, T]

    Returns
    -------
    TwoParameterIntegrand
        a simple integrand on the partition with g.n_modes coordinates
    """
    m = int(m)
    if not 0 <= m <= g.n_modes:
        raise ValueError("m must lie in [0, %d], got %s" % (g.n_modes, m))
    points = partition.points
    mids = 0.5 * (points[:-1] + points[1:])
    atol = 1e-12 * max(1.0, partition.horizon)
    n_modes = g.n_modes

    def func(s, t):
        out = np.zeros((t.size, n_modes))
        if m == 0:
            return out
        node_values = g.values(s, points)[:, :m]
        mid_values = g.values(s, mids)[:, :m]
        pos = np.searchsorted(points, t)
        nearest = np.minimum(pos, points.size - 1)
        at_node = np.abs(points[nearest] - t) <= atol
        interval = np.clip(pos - 1, 0, mids.size - 1)
        out[:, :m] = np.where(at_node[:, None], node_values[nearest],
                              mid_values[interval])
        return out
    return TwoParameterIntegrand(func, g.s_points, g.weights, n_modes,
                                 SIMPLE, partition)


def sup_distance(g, h, t_points) -> float:
    """
    max over S and the given times of the Euclidean distance between the
    coordinates of g and h.
    """
    if g.n_modes != h.n_modes:
        raise ValueError("integrands have %d and %d modes"
                         % (g.n_modes, h.n_modes))
    t_points = np.asarray(t_points, dtype=float)
    return max(float(np.max(np.linalg.norm(g.values(s, t_points) -
                                           h.values(s, t_points), axis=1)))
               for s in g.s_points)
