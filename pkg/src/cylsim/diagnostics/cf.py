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
Characteristic functions of <Y(t), v>: quadrature oracle, exact law of the
canonical left-point scheme, empirical estimates and their comparison.
"""
import logging
from collections import namedtuple

import numpy as np

from cylsim.convolution.simulate import simulate_batch
from cylsim.core.montecarlo import DEFAULT_CHUNK
from cylsim.core.quadrature import DEFAULT_TOL
from cylsim.core.quadrature import integrate_vector
from cylsim.core.utils import as_vector
from cylsim.core.utils import pad
from cylsim.noise.laws import check_alpha
from cylsim.noise.laws import make_symbol

DEFAULT_CF_TOLERANCE = 0.02


def default_beta_grid() -> np.ndarray:
    """101 equally spaced points of [-5, 5]."""
    return np.linspace(-5.0, 5.0, 101)


class CfComparison(namedtuple("CfComparison", [
        "beta_grid", "empirical", "analytic", "sup_distance", "n_samples",
        "standard_error_bound"])):
    """
    Empirical against reference characteristic function on a beta grid.

    ``standard_error_bound`` is the uniform 3 sigma bound 3 / sqrt(M).
    """

    def threshold(self, tolerance=DEFAULT_CF_TOLERANCE) -> float:
        return max(tolerance, self.standard_error_bound)

    def passed(self, tolerance=DEFAULT_CF_TOLERANCE) -> bool:
        return self.sup_distance <= self.threshold(tolerance)

    def rows(self):
        """Yields (beta, re/im of empirical, re/im of reference)."""
        for beta, emp, ref in zip(self.beta_grid, self.empirical,
                                  self.analytic):
            yield beta, emp.real, emp.imag, ref.real, ref.imag


def _betas(betas):
    if betas is None:
        return np.ones(1)
    return np.atleast_1d(np.asarray(betas, dtype=float))


def log_cf_integral(v, t0, t1, spec, pair, quad_tol=DEFAULT_TOL,
                    betas=None) -> np.ndarray:
    """
    int_{t0}^{t1} Psi(beta B* T*(s) v) ds for every beta, by adaptive
    quadrature.

    Raises
    ------
    QuadratureError
        when the integral does not reach quad_tol
    """
    v = as_vector(v, "v", length=min(pair.n_modes, spec.n_modes))
    betas = _betas(betas)
    if not 0.0 <= t0 <= t1:
        raise ValueError("need 0 <= t0 <= t1, got [%s, %s]" % (t0, t1))
    if t0 == t1:
        return np.zeros(betas.size, dtype=complex)
    psi = make_symbol(spec, v.size)
    weights = pair.b[:v.size] * v
    lambdas = pair.lambdas[:v.size]

    def integrand(s):
        w = weights * np.exp(-lambdas * s)
        values = [psi(beta * w) for beta in betas]
        return np.array([z.real for z in values] + [z.imag for z in values])
    total = integrate_vector(integrand, float(t0), float(t1), tol=quad_tol)
    return total[:betas.size] + 1j * total[betas.size:]


def analytic_cf(v, t, spec, pair, quad_tol=DEFAULT_TOL, betas=None):
    """
    Characteristic function exp(int_0^t Psi(B* T*(s) beta v) ds) of
    <Y(t), v> for y0 = 0.

    Parameters
    ----------
    v : array-like
        truncated direction
    t : float
        time in [0, T]
    spec : CylindricalNoiseSpec
        the noise
    pair : SpectralOperatorPair
        the operator pair
    quad_tol : float
        absolute tolerance on the exponent
    betas : array-like
        evaluation points; None evaluates at beta = 1 and returns a scalar

    Returns
    -------
    complex or numpy.ndarray
        the characteristic function
    """
    t = float(t)
    if not 0.0 <= t <= pair.horizon:
        raise ValueError("t must lie in [0, %s], got %s" % (pair.horizon, t))
    values = np.exp(log_cf_integral(v, 0.0, t, spec, pair, quad_tol, betas))
    return complex(values[0]) if betas is None else values


def scheme_cf(v, t, grid, alpha, pair, betas=None, drift=None):
    """
    Exact characteristic function of <Y(t), v> under the left-point
    canonical scheme on grid:
    prod_j exp(-D_j |beta|^alpha ||B exp(-Lambda (t - t_j)) v||^alpha)
    times the phase of the drift contributions, if any.
    """
    alpha = check_alpha(alpha)
    v = as_vector(v, "v", length=pair.n_modes)
    end = grid.index_of(t)
    left = grid.points[:end]
    steps = grid.steps()[:end]
    lags = grid.points[end] - left
    weights = (pair.b[:v.size] * v)[None, :] * np.exp(
        -np.outer(lags, pair.lambdas[:v.size]))
    exponent = -np.sum(steps * np.linalg.norm(weights, axis=1) ** alpha)
    beta = _betas(betas)
    shift = 0.0
    if drift is not None:
        shift = np.sum(steps * (weights @ pad(as_vector(drift, "drift"),
                                               v.size)))
    values = np.exp(np.abs(beta) ** alpha * exponent + 1j * beta * shift)
    return complex(values[0]) if betas is None else values


def empirical_cf(samples, beta_grid, chunk=DEFAULT_CHUNK):
    """
    Empirical characteristic function (1/M) sum_m exp(i beta x_m).

    Returns
    -------
    (numpy.ndarray, float)
        the complex values on beta_grid and the uniform 3 sigma bound
        3 / sqrt(M)
    """
    samples = np.asarray(samples, dtype=float).ravel()
    if samples.size < 2:
        raise ValueError("empirical_cf needs at least 2 samples, got %d"
                         % samples.size)
    betas = np.asarray(beta_grid, dtype=float)
    cos_sum = np.zeros(betas.size)
    sin_sum = np.zeros(betas.size)
    for start in range(0, samples.size, chunk):
        phase = np.outer(betas, samples[start:start + chunk])
        cos_sum += np.cos(phase).sum(axis=1)
        sin_sum += np.sin(phase).sum(axis=1)
    cf = (cos_sum + 1j * sin_sum) / samples.size
    return cf, 3.0 / np.sqrt(samples.size)


def projected_samples(spec, pair, grid, v, indices, n_samples, seed,
                      y0=None, threads=1, first_stream=0, force=False):
    """
    Replicates of <Y(t_i), v> at the grid indices i, shape (M, len(indices)).

    Only the modes in the support of v are simulated.
    """
    v = as_vector(v, "v", length=pair.n_modes)
    modes = [int(k) for k in np.flatnonzero(v)]
    if not modes:
        return np.zeros((int(n_samples), len(indices)))
    states = simulate_batch(spec, pair, grid, y0, seed, n_samples, indices,
                            modes=modes, threads=threads,
                            first_stream=first_stream, force=force)
    return states @ v[modes]


def compare_cf(samples, reference, beta_grid) -> CfComparison:
    """Builds the comparison of samples against reference CF values."""
    empirical, bound = empirical_cf(samples, beta_grid)
    distance = float(np.max(np.abs(empirical - reference)))
    return CfComparison(np.asarray(beta_grid, dtype=float), empirical,
                        np.asarray(reference, dtype=complex), distance,
                        int(np.size(samples)), bound)


def cf_match(v, t, spec, pair, n_samples, beta_grid, seed, grid,
             quad_tol=DEFAULT_TOL, threads=1, first_stream=0,
             force=False) -> CfComparison:
    """
    Simulates M replicates of <Y(t), v> from y0 = 0 and compares their
    empirical CF with :func:`analytic_cf`.

    Parameters
    ----------
    v : array-like
        truncated direction
    t : float
        a time of grid
    spec, pair
        the noise and the operator pair
    n_samples : int
        number of replicates M
    beta_grid : array-like
        evaluation points
    seed : int
        run seed
    grid : TimeGrid
        simulation grid containing t
    quad_tol : float
        quadrature tolerance of the reference
    threads : int
        worker threads
    first_stream : int
        stream id of the first replicate chunk
    force : bool
        skip the integrability check

    Returns
    -------
    CfComparison
        the comparison, pass iff sup_distance <= max(tolerance, 3/sqrt(M))
    """
    logger = logging.getLogger(__name__)
    index = grid.index_of(t)
    samples = projected_samples(spec, pair, grid, v, [index], n_samples,
                                seed, threads=threads,
                                first_stream=first_stream, force=force)[:, 0]
    reference = analytic_cf(v, t, spec, pair, quad_tol, betas=beta_grid)
    comparison = compare_cf(samples, reference, beta_grid)
    logger.info("cf distance at t=%s: %s (M=%d)", t,
                comparison.sup_distance, comparison.n_samples)
    return comparison
