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
Mild solution Y(t) = T(t) y0 + int_0^t T(t - s) B dL(s) on a time grid.

Every simulator reduces to the per-step recursion

    Y(t_{j+1}) = exp(-Lambda D_j) Y(t_j) + xi_j

run by :func:`propagate`. For series noise xi_j is exact in distribution:
stable and Gaussian increments are rescaled by the stochastic-integral
scale of the step, compound Poisson jumps are decayed from their position
inside the step. For canonical noise the kernel is frozen at the left
point: xi_j = exp(-Lambda D_j) B DL_j.
"""
import logging
from collections import OrderedDict

import numpy as np

from cylsim.convolution.path import SolutionPath
from cylsim.core.montecarlo import DEFAULT_CHUNK
from cylsim.core.montecarlo import fan_out
from cylsim.core.rng import check_seed
from cylsim.core.utils import as_vector
from cylsim.core.utils import fsum
from cylsim.core.utils import pad
from cylsim.noise.laws import COMPOUND_POISSON
from cylsim.noise.laws import CylindricalNoiseSpec
from cylsim.noise.laws import STABLE
from cylsim.noise.sampling import draw_increments
from cylsim.noise.sampling import sample_increments
from cylsim.semigroup.checks import INCONCLUSIVE
from cylsim.semigroup.checks import NOT_INTEGRABLE
from cylsim.semigroup.checks import integrability_verdict


class IntegrabilityError(RuntimeError):
    """Raised when simulating a configuration without a mild solution."""

    def __init__(self, verdict):
        super().__init__("the stochastic convolution is not integrable: %s"
                         % verdict.detail)
        self.verdict = verdict


def require_integrable(spec, pair, force=False):
    """
    Runs the existence check of (spec, pair).

    Raises
    ------
    IntegrabilityError
        when the verdict is NotIntegrable and force is False
    """
    logger = logging.getLogger(__name__)
    if force:
        logger.warning("integrability check skipped (--force)")
        return None
    verdict = integrability_verdict(spec, pair)
    if verdict.decision == NOT_INTEGRABLE:
        raise IntegrabilityError(verdict)
    if verdict.decision == INCONCLUSIVE:
        logger.warning("integrability is inconclusive (%s), simulating "
                       "anyway", verdict.detail)
    return verdict


def _check_modes(spec, pair):
    if spec.n_modes != pair.n_modes:
        raise ValueError("noise has %d modes, operator pair has %d"
                         % (spec.n_modes, pair.n_modes))


def _relative_decay(x, rate):
    # (1 - exp(-rate x)) / (rate x), 1 at x = 0
    out = np.ones(np.shape(x))
    live = x > 0.0
    scaled = np.broadcast_to(rate, np.shape(x))[live] * x[live]
    out[live] = -np.expm1(-scaled) / scaled
    return out


def series_contributions(cols, lambdas, b, dt, centred, jumps, drift):
    """
    Exact step contributions xi of series noise.

    Parameters
    ----------
    cols : LawColumns
        laws of the modes
    lambdas, b : numpy.ndarray
        eigenvalues and coefficients of B of the modes
    dt : numpy.ndarray
        step lengths
    centred : numpy.ndarray
        driftless increments, shape (N, n) or (N, n, R)
    jumps : tuple
        (mode position, step, replicate, offset, size) arrays of compound
        Poisson jumps, or None
    drift : numpy.ndarray
        drift coordinates of the modes

    Returns
    -------
    numpy.ndarray
        xi with the shape of centred
    """
    rate_by_mode = np.where(cols.mask(STABLE), cols.alpha, 2.0)
    exposure = np.outer(dt, lambdas)
    factor = _relative_decay(exposure, rate_by_mode[None, :])
    factor = factor ** (1.0 / rate_by_mode)
    factor[:, cols.mask(COMPOUND_POISSON)] = 0.0
    shift = drift * b * dt[:, None] * _relative_decay(exposure, 1.0)
    if centred.ndim == 3:
        factor = factor[..., None]
        shift = shift[..., None]
    xi = b[:, None] * factor if centred.ndim == 3 else b * factor
    xi = xi * centred + shift
    if jumps is not None and jumps[0].size:
        pos, step, replicate, offset, size = jumps
        decayed = (b[pos] * size *
                   np.exp(-lambdas[pos] * (dt[step] - offset)))
        if centred.ndim == 3:
            np.add.at(xi, (step, pos, replicate), decayed)
        else:
            np.add.at(xi, (step, pos), decayed)
    return xi


def step_operators(spec, pair, increments):
    """
    Per-step decay factors and contributions of a sampled table.

    Returns
    -------
    (numpy.ndarray, numpy.ndarray)
        decay and xi, both [n_steps x n_modes]
    """
    n = increments.n_modes
    if n > pair.n_modes:
        raise ValueError("table has %d modes, operator pair has %d"
                         % (n, pair.n_modes))
    dt = increments.grid.steps()
    lambdas = pair.lambdas[:n]
    b = pair.b[:n]
    decay = np.exp(-np.outer(dt, lambdas))
    if spec.is_canonical():
        return decay, decay * (b * increments.values)
    centred = increments.values - dt[:, None] * increments.drift
    table_jumps = increments.jumps
    jumps = None
    if table_jumps.mode.size:
        jumps = (table_jumps.mode, table_jumps.step,
                 np.zeros_like(table_jumps.step), table_jumps.offset,
                 table_jumps.size)
    xi = series_contributions(spec.columns(n), lambdas, b, dt, centred,
                              jumps, increments.drift)
    return decay, xi


def propagate(decay, xi, y_start, j0, j1, record=None):
    """
    Runs Y_{j+1} = decay_j Y_j + xi_j from Y_{j0} = y_start to j1.

    Parameters
    ----------
    decay, xi : numpy.ndarray
        per-step factors and contributions, indexed by step first
    y_start : numpy.ndarray
        state at step j0
    j0, j1 : int
        first and last grid index, j0 <= j1
    record : list
        grid indices to keep, all of j0..j1 when None

    Returns
    -------
    numpy.ndarray
        the kept states, stacked along the first axis
    """
    if not 0 <= j0 <= j1 <= decay.shape[0]:
        raise ValueError("invalid step range [%d, %d]" % (j0, j1))
    keep = list(range(j0, j1 + 1)) if record is None else list(record)
    out = np.empty((len(keep),) + np.shape(y_start))
    slots = {}
    for slot, index in enumerate(keep):
        slots.setdefault(index, []).append(slot)
    state = np.array(y_start, dtype=float)
    for slot in slots.get(j0, []):
        out[slot] = state
    for j in range(j0, j1):
        state = decay[j] * state + xi[j]
        for slot in slots.get(j + 1, []):
            out[slot] = state
    return out


def _initial_state(y0, n_modes):
    if y0 is None:
        return np.zeros(n_modes)
    return pad(as_vector(y0, "y0", length=n_modes), n_modes)


def solve_on_increments(spec, pair, increments, y0=None) -> SolutionPath:
    """
    Solution path driven by a given increment table.

    Simulators and flows share this recursion, so paths built from the
    same table agree bit for bit.
    """
    y_start = _initial_state(y0, increments.n_modes)
    decay, xi = step_operators(spec, pair, increments)
    coeffs = propagate(decay, xi, y_start, 0, increments.n_steps)
    provenance = OrderedDict([
        ("spec", spec.describe()), ("spec_id", spec.fingerprint()),
        ("pair", pair.describe()), ("seed", increments.seed),
        ("stream_id", increments.stream_id),
    ])
    return SolutionPath(increments.grid, coeffs, y_start, provenance,
                        increments)


def simulate_series(spec, pair, grid, y0, seed, stream_id,
                    force=False) -> SolutionPath:
    """
    Exact-in-distribution simulation under series noise.

    Parameters
    ----------
    spec : CylindricalNoiseSpec
        series noise
    pair : SpectralOperatorPair
        operator pair with the same number of modes
    grid : TimeGrid
        time grid
    y0 : array-like
        initial condition (zero padded), None for 0
    seed, stream_id : int
        random stream of the path
    force : bool
        simulate even when the convolution is not integrable

    Returns
    -------
    SolutionPath
        the simulated path, replayable from (seed, stream_id)
    """
    if not spec.is_series():
        raise ValueError("simulate_series needs series noise")
    _check_modes(spec, pair)
    require_integrable(spec, pair, force)
    increments = sample_increments(spec, grid, pair.n_modes, seed, stream_id)
    return solve_on_increments(spec, pair, increments, y0)


def simulate_canonical(alpha, pair, grid, y0, seed, stream_id, force=False,
                       drift=None) -> SolutionPath:
    """
    Left-point kernel scheme under canonical alpha-stable noise:
    Y(t_{j+1}) = exp(-Lambda D) Y(t_j) + exp(-Lambda D) B DL_j.
    """
    spec = CylindricalNoiseSpec.canonical(alpha, pair.n_modes, drift=drift)
    require_integrable(spec, pair, force)
    increments = sample_increments(spec, grid, pair.n_modes, seed, stream_id)
    return solve_on_increments(spec, pair, increments, y0)


def simulate(spec, pair, grid, y0, seed, stream_id, force=False):
    """Dispatches to the simulator of the noise type."""
    if spec.is_canonical():
        _check_modes(spec, pair)
        require_integrable(spec, pair, force)
        increments = sample_increments(spec, grid, pair.n_modes, seed,
                                       stream_id)
        return solve_on_increments(spec, pair, increments, y0)
    return simulate_series(spec, pair, grid, y0, seed, stream_id, force)


def simulate_batch(spec, pair, grid, y0, seed, n_paths, record, modes=None,
                   threads=1, chunk=DEFAULT_CHUNK, first_stream=0,
                   force=False) -> np.ndarray:
    """
    Replicate-batched simulation recording selected grid states.

    Replicates are drawn chunk by chunk, chunk c from stream id
    ``first_stream + c``, and each mode is propagated separately. Results
    do not depend on the number of threads.

    Parameters
    ----------
    spec : CylindricalNoiseSpec
        the noise
    pair : SpectralOperatorPair
        the operator pair
    grid : TimeGrid
        time grid
    y0 : array-like
        initial condition, None for 0
    seed : int
        run seed
    n_paths : int
        number of replicates
    record : list
        grid indices whose states are returned
    modes : list
        zero-based modes to simulate, all modes when None
    threads : int
        worker threads
    chunk : int
        replicates per chunk
    first_stream : int
        stream id of the first chunk
    force : bool
        skip the integrability check

    Returns
    -------
    numpy.ndarray
        states of shape (n_paths, len(record), len(modes))
    """
    logger = logging.getLogger(__name__)
    seed = check_seed(seed)
    _check_modes(spec, pair)
    require_integrable(spec, pair, force)
    modes = list(range(pair.n_modes)) if modes is None else list(modes)
    record = [int(j) for j in record]
    y_start = _initial_state(y0, pair.n_modes)
    dt = grid.steps()
    drift = spec.drift_vector(pair.n_modes)
    cols = None if spec.is_canonical() else spec.columns(pair.n_modes)
    logger.info("simulating %d paths of %d modes on %d steps", n_paths,
                len(modes), grid.n_steps)

    def work(stream_id, size):
        out = np.empty((size, len(record), len(modes)))
        for pos, mode in enumerate(modes):
            centred, jumps = draw_increments(spec, dt, [mode], seed,
                                             stream_id, size=size, cols=cols)
            lam = pair.lambdas[mode:mode + 1]
            b = pair.b[mode:mode + 1]
            decay = np.exp(-np.outer(dt, lam))
            if cols is None:
                increments = centred + (dt[:, None] *
                                        drift[mode:mode + 1])[..., None]
                xi = decay[..., None] * (b[:, None] * increments)
            else:
                xi = series_contributions(cols.take([mode]), lam, b, dt,
                                          centred, jumps,
                                          drift[mode:mode + 1])
            start = np.full((1, size), y_start[mode])
            states = propagate(decay[..., None], xi, start, 0, grid.n_steps,
                               record)
            out[:, :, pos] = states[:, 0, :].T
        return out
    return fan_out(work, n_paths, threads=threads, chunk=chunk,
                   first_stream=first_stream)


def flow_apply(pair, spec, s, t, v, increments) -> np.ndarray:
    """
    Phi_{s,t}(v) = T(t - s) v + int_s^t T(t - r) B dL(r) computed from the
    given increments with the simulators' recursion.

    Raises
    ------
    ValueError
        when s > t or either time is off the grid
    """
    j0 = increments.grid.index_of(s)
    j1 = increments.grid.index_of(t)
    if j0 > j1:
        raise ValueError("flow needs s <= t, got s = %s, t = %s" % (s, t))
    state = pad(as_vector(v, "v", length=increments.n_modes),
                increments.n_modes)
    decay, xi = step_operators(spec, pair, increments)
    return propagate(decay, xi, state, j0, j1, record=[j1])[0]


def riemann_stochastic_integral(f_values, increments) -> float:
    """
    Elementary integral sum_j <f(t_j), DL_j> of a step function.

    Parameters
    ----------
    f_values : array-like
        [n_steps x m] values of f on the steps, m <= n_modes
    increments : IncrementTable
        the noise increments

    Returns
    -------
    float
        the integral, summed with compensated summation
    """
    f = np.asarray(f_values, dtype=float)
    if f.ndim == 1:
        f = f[:, None]
    if f.ndim != 2 or f.shape[0] != increments.n_steps:
        raise ValueError("integrand of shape %s does not match %d steps"
                         % (np.shape(f_values), increments.n_steps))
    if f.shape[1] > increments.n_modes:
        raise ValueError("integrand has %d modes, table has %d"
                         % (f.shape[1], increments.n_modes))
    return fsum((f * increments.values[:, :f.shape[1]]).ravel())
