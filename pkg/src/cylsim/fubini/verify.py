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
Refinement verifiers of the stochastic Fubini identity and of integration
by parts against a fixed sampled path.

Refinement studies coarsen one fine IncrementTable by pairwise summation,
so every mesh sees the same underlying path.
"""
import logging
from collections import namedtuple

import numpy as np

from cylsim.convolution.simulate import riemann_stochastic_integral
from cylsim.core.utils import as_vector
from cylsim.core.utils import fsum
from cylsim.fubini.integrand import build_g_mn

FUBINI_RTOL = 1e-12

FubiniResult = namedtuple("FubiniResult", ["lhs", "rhs", "residual",
                                           "threshold"])
FubiniResult.__doc__ = """
Both sides of the discretized Fubini identity and |lhs - rhs| with the
floating-point threshold 1e-12 (1 + |lhs|).
"""

IbpResult = namedtuple("IbpResult", ["lhs", "rhs", "residual", "mesh"])
IbpResult.__doc__ = """
Riemann stochastic integral of tau u (lhs), its summation-by-parts form
(rhs) and their distance on a grid of the given mesh.
"""

RefinementRow = namedtuple("RefinementRow", ["mesh", "residual"])


def _mesh(grid) -> float:
    return float(np.max(grid.steps()))


def _coarsened(table, times):
    for _ in range(times):
        table = table.coarsen()
    return table


def weighted_integral(g, increments) -> float:
    """int_0^T sum_s eta(s) g(s, t) dL(t) as a Riemann sum."""
    return riemann_stochastic_integral(g.weighted_step_values(
        increments.grid), increments)


def verify_fubini(g, increments) -> FubiniResult:
    """
    Compares sum_s eta(s) int g(s, t) dL(t) with int sum_s eta(s) g(s, t)
    dL(t) on one increment table.

    Parameters
    ----------
    g : TwoParameterIntegrand
        the integrand, with at most ``increments.n_modes`` coordinates
    increments : IncrementTable
        the noise increments, shared by both sides

    Returns
    -------
    FubiniResult
        both sides and their distance
    """
    grid = increments.grid
    lhs = fsum(weight * riemann_stochastic_integral(g.step_values(s, grid),
                                                    increments)
               for s, weight in zip(g.s_points, g.weights))
    rhs = weighted_integral(g, increments)
    residual = abs(lhs - rhs)
    logger = logging.getLogger(__name__)
    logger.debug("fubini on %d steps: lhs=%r rhs=%r", grid.n_steps, lhs, rhs)
    return FubiniResult(lhs, rhs, residual, FUBINI_RTOL * (1.0 + abs(lhs)))


def fubini_refinement(g, table, levels) -> list:
    """
    Residuals of the discretized integrands g_mn against the finest
    construction, along the diagonal m = min(n_modes, n_steps).

    Parameters
    ----------
    g : TwoParameterIntegrand
        the integrand
    table : IncrementTable
        increments on the finest grid; must be coarsenable levels times
    levels : int
        number of coarser meshes studied

    Returns
    -------
    list
        RefinementRow entries ordered from the coarsest mesh to the finest
    """
    if levels < 1:
        raise ValueError("need at least one refinement level, got %s"
                         % levels)
    reference = weighted_integral(build_g_mn(g, g.n_modes, table.grid),
                                  table)
    rows = []
    for times in range(levels, 0, -1):
        coarse = _coarsened(table, times)
        m = min(g.n_modes, coarse.n_steps)
        approx = weighted_integral(build_g_mn(g, m, coarse.grid), coarse)
        rows.append(RefinementRow(_mesh(coarse.grid),
                                  abs(approx - reference)))
    return rows


def verify_integration_by_parts(tau, dtau, u, increments) -> IbpResult:
    """
    Checks int_0^T tau(s) dL(s)(u) = -int_0^T L(s)(u) tau'(s) ds +
    tau(T) L(T)(u) on one path.

    The stochastic integral is the left-point Riemann sum and the time
    integral the left-point rule.

    Parameters
    ----------
    tau, dtau : callable
        the scalar function and its derivative, vectorized over times
    u : array-like
        truncated direction
    increments : IncrementTable
        the noise increments

    Returns
    -------
    IbpResult
        both sides and their distance D
    """
    grid = increments.grid
    u = as_vector(u, "u", length=increments.n_modes)
    left = grid.points[:-1]
    tau_left = np.broadcast_to(np.asarray(tau(left), dtype=float),
                               left.shape)
    dtau_left = np.broadcast_to(np.asarray(dtau(left), dtype=float),
                                left.shape)
    lhs = riemann_stochastic_integral(np.outer(tau_left, u), increments)
    path = increments.cumulative(u)
    tau_end = float(np.asarray(tau(np.array([grid.horizon])),
                               dtype=float).ravel()[0])
    rhs = (tau_end * path[-1] -
           fsum(dtau_left * path[:-1] * grid.steps()))
    return IbpResult(lhs, rhs, abs(lhs - rhs), _mesh(grid))


def ibp_refinement(tau, dtau, u, table, levels) -> list:
    """
    D on the table coarsened levels, levels - 1, ..., 0 times.

    Returns
    -------
    list
        RefinementRow entries ordered from the coarsest mesh to the finest
    """
    rows = []
    for times in range(int(levels), -1, -1):
        result = verify_integration_by_parts(tau, dtau, u,
                                             _coarsened(table, times))
        rows.append(RefinementRow(result.mesh, result.residual))
    return rows


def refinement_slope(rows) -> float:
    """
    Least-squares slope of log residual against log mesh, nan when a
    residual vanishes.
    """
    mesh = np.array([row.mesh for row in rows])
    residual = np.array([row.residual for row in rows])
    if len(rows) < 2 or np.any(residual <= 0.0):
        return float("nan")
    return float(np.polyfit(np.log(mesh), np.log(residual), 1)[0])


def residual_rows(check, rows) -> list:
    """Report rows ``check,mesh,residual``."""
    return [(check, row.mesh, row.residual) for row in rows]
