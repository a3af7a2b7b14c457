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
Pathwise diagnostics on sampled increments and simulated paths.
"""
import logging
from collections import namedtuple

import numpy as np
from scipy import integrate

from cylsim.convolution.simulate import flow_apply
from cylsim.convolution.simulate import solve_on_increments
from cylsim.core.rng import stream
from cylsim.core.utils import as_vector
from cylsim.fubini.verify import RefinementRow
from cylsim.noise.sampling import sample_increments

JumpSupGrowth = namedtuple("JumpSupGrowth", ["ns", "medians", "ratio"])
JumpSupGrowth.__doc__ = """
Medians over seeds of the jump-sup statistic for every truncation n and
the ratio of the last median to the first.
"""


def scalar_l2_path(path, v) -> float:
    """Trapezoidal int_0^T <Y(t), v>^2 dt on the grid skeleton."""
    v = as_vector(v, "v", length=path.n_modes)
    return float(integrate.trapezoid(path.projection(v) ** 2,
                                     path.grid.points))


def jump_sup_profile(increments, b, ns) -> np.ndarray:
    """
    :func:`jump_sup_statistic` for every n in ns from one cumulative sum
    over modes, hence nondecreasing in n.
    """
    ns = [int(n) for n in ns]
    if not ns or min(ns) < 1 or max(ns) > increments.n_modes:
        raise ValueError("truncations must lie in [1, %d], got %s"
                         % (increments.n_modes, ns))
    b = as_vector(b, "b")
    if b.size < max(ns):
        raise ValueError("%d coefficients of B for %d modes"
                         % (b.size, max(ns)))
    top = max(ns)
    squares = (b[:top] * increments.values[:, :top]) ** 2
    partial = np.cumsum(squares, axis=1)
    return np.array([float(np.max(partial[:, n - 1])) for n in ns])


def jump_sup_statistic(increments, b, n) -> float:
    """
    max_j sum_{k <= n} (b_k DL_j(e_k))^2, the discrete surrogate of the
    squared jump supremum of the n-mode projection.
    """
    return float(jump_sup_profile(increments, b, [n])[0])


def jump_sup_growth(spec, grid, b, ns, n_seeds, seed,
                    first_stream=0) -> JumpSupGrowth:
    """
    Medians of the jump-sup statistic over n_seeds independent tables,
    table i drawn from stream ``first_stream + i``.
    """
    logger = logging.getLogger(__name__)
    ns = sorted(int(n) for n in ns)
    stats = np.empty((int(n_seeds), len(ns)))
    for i in range(int(n_seeds)):
        table = sample_increments(spec, grid, ns[-1], seed, first_stream + i)
        stats[i] = jump_sup_profile(table, b, ns)
    medians = np.median(stats, axis=0)
    ratio = float(medians[-1] / medians[0]) if medians[0] > 0 else np.inf
    logger.info("jump-sup medians %s over n=%s", medians.tolist(), ns)
    return JumpSupGrowth(ns, medians, ratio)


def weak_equation_residual(path, increments, pair) -> float:
    """
    max over grid times and modes of
    |<Y(t), h_k> - <y0, h_k> + lambda_k int_0^t <Y(s), h_k> ds -
    b_k L(t)(e_k)| with the left-point time integral.
    """
    n = path.n_modes
    coeffs = path.coeffs
    dt = path.grid.steps()
    integral = np.zeros_like(coeffs)
    np.cumsum(coeffs[:-1] * dt[:, None], axis=0, out=integral[1:])
    noise = increments.cumulative()[:, :n]
    residual = (coeffs - path.y0[None, :n] +
                pair.lambdas[:n] * integral - pair.b[:n] * noise)
    return float(np.max(np.abs(residual)))


def weak_refinement(spec, pair, table, levels, y0=None) -> list:
    """
    Weak-equation residuals of the solutions driven by the table coarsened
    levels, levels - 1, ..., 0 times.

    Returns
    -------
    list
        RefinementRow entries ordered from the coarsest mesh to the finest
    """
    tables = [table]
    for _ in range(int(levels)):
        tables.append(tables[-1].coarsen())
    rows = []
    for current in reversed(tables):
        path = solve_on_increments(spec, pair, current, y0)
        rows.append(RefinementRow(float(np.max(current.grid.steps())),
                                  weak_equation_residual(path, current,
                                                         pair)))
    return rows


def random_triples(n_points, count, seed, stream_id=0) -> np.ndarray:
    """count sorted index triples r <= s <= t of a grid with n_points."""
    rng = stream(seed, stream_id)
    return np.sort(rng.integers(0, n_points, size=(int(count), 3)), axis=1)


def flow_identity_error(spec, pair, increments, triples, v) -> float:
    """
    max |Phi_{s,t}(Phi_{r,s}(v)) - Phi_{r,t}(v)| over index triples, all
    flows computed from the same increments.
    """
    points = increments.grid.points
    worst = 0.0
    for r, s, t in triples:
        inner = flow_apply(pair, spec, points[r], points[s], v, increments)
        composed = flow_apply(pair, spec, points[s], points[t], inner,
                              increments)
        direct = flow_apply(pair, spec, points[r], points[t], v, increments)
        worst = max(worst, float(np.max(np.abs(composed - direct))))
    return worst


def markov_split_check(spec, pair, increments, pairs, y0=None) -> float:
    """
    max |Y(t_j) - Phi_{t_i, t_j}(Y(t_i))| over index pairs i <= j, with Y
    the solution driven by the same increments.
    """
    path = solve_on_increments(spec, pair, increments, y0)
    points = increments.grid.points
    worst = 0.0
    for i, j in pairs:
        split = flow_apply(pair, spec, points[i], points[j], path.coeffs[i],
                           increments)
        worst = max(worst, float(np.max(np.abs(path.coeffs[j] - split))))
    return worst
