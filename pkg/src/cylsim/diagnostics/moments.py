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
Second moments and continuity in time of the mild solution.

Continuity probes couple Y(t) and Y(t + eps) through one set of increments:
both are recorded on the same simulated paths.
"""
import logging
from collections import namedtuple

import numpy as np

from cylsim.convolution.grid import TimeGrid
from cylsim.convolution.simulate import simulate_batch
from cylsim.core.utils import as_vector
from cylsim.core.utils import fsum
from cylsim.diagnostics.cf import projected_samples
from cylsim.noise.laws import COMPOUND_POISSON
from cylsim.noise.laws import GAUSSIAN
from cylsim.semigroup.pair import decay_integral

MomentTerms = namedtuple("MomentTerms", ["total", "drift", "gaussian",
                                         "jump"])
MomentTerms.__doc__ = """
E||Y(t)||^2 for y0 = 0 split into the squared mean, the Gaussian trace and
the jump second moment.
"""


class MomentComparison(namedtuple("MomentComparison", [
        "t", "analytic", "empirical", "std_error", "terms"])):
    """Monte Carlo estimate of E||Y(t)||^2 against the closed form."""

    def threshold(self, n_sigma=3.0) -> float:
        """n_sigma standard errors plus a floating-point floor."""
        return n_sigma * self.std_error + 1e-12 * (1.0 + abs(self.analytic))

    def passed(self, n_sigma=3.0) -> bool:
        return abs(self.empirical - self.analytic) <= self.threshold(n_sigma)


ContinuityEstimate = namedtuple("ContinuityEstimate", ["epsilons",
                                                       "estimates",
                                                       "std_errors"])
ContinuityEstimate.__doc__ = """
Coupled Monte Carlo estimates for every eps with their standard errors.
"""


def second_moment_analytic(t, spec, pair) -> MomentTerms:
    """
    E||Y(t)||^2 for y0 = 0 under noise with weak second moments.

    With Phi(s) = T(s)B, coordinate-wise:
    drift term sum_k (a_k b_k int_0^t e^{-lambda_k s} ds)^2, Gaussian term
    sum_k b_k^2 var_k int_0^t e^{-2 lambda_k s} ds and jump term
    sum_k b_k^2 rate_k jump_std_k^2 int_0^t e^{-2 lambda_k s} ds.

    Raises
    ------
    ValueError
        "infinite second moment" for canonical noise or a stable component
    """
    if not spec.has_weak_second_moments():
        raise ValueError("infinite second moment: %s has stable components"
                         % spec.describe())
    t = float(t)
    if not 0.0 <= t <= pair.horizon:
        raise ValueError("t must lie in [0, %s], got %s" % (pair.horizon, t))
    n = pair.n_modes
    cols = spec.columns(n)
    b, lambdas = pair.b, pair.lambdas
    mean = spec.drift_vector(n) * b * decay_integral(lambdas, 1.0, t)
    spread = b ** 2 * decay_integral(lambdas, 2.0, t)
    gaussian = np.where(cols.mask(GAUSSIAN), cols.variance, 0.0)
    jumps = np.where(cols.mask(COMPOUND_POISSON),
                     cols.rate * cols.jump_std ** 2, 0.0)
    drift_term = fsum(mean ** 2)
    gaussian_term = fsum(spread * gaussian)
    jump_term = fsum(spread * jumps)
    return MomentTerms(fsum([drift_term, gaussian_term, jump_term]),
                       drift_term, gaussian_term, jump_term)


def _mean_and_error(values):
    values = np.asarray(values, dtype=float)
    mean = fsum(values) / values.size
    spread = fsum((values - mean) ** 2) / max(values.size - 1, 1)
    return mean, float(np.sqrt(spread / values.size))


def second_moment_empirical(t, spec, pair, n_samples, seed, grid=None,
                            threads=1, first_stream=0,
                            force=False) -> MomentComparison:
    """
    Monte Carlo mean of ||Y(t)||^2 with its standard error.

    The series simulator is exact on any grid, so the default grid is the
    single step [0, t].
    """
    terms = second_moment_analytic(t, spec, pair)
    if t == 0.0:
        return MomentComparison(0.0, 0.0, 0.0, 0.0, terms)
    grid = TimeGrid.from_points([t]) if grid is None else grid
    states = simulate_batch(spec, pair, grid, None, seed, n_samples,
                            [grid.index_of(t)], threads=threads,
                            first_stream=first_stream, force=force)
    norms = np.sum(states[:, 0, :] ** 2, axis=1)
    empirical, error = _mean_and_error(norms)
    logger = logging.getLogger(__name__)
    logger.info("E||Y(%s)||^2: analytic %s, Monte Carlo %s +/- %s", t,
                terms.total, empirical, error)
    return MomentComparison(float(t), terms.total, empirical, error, terms)


def _probe_grid(t, epsilons, base_grid):
    times = [t] + [t + eps for eps in epsilons]
    if base_grid is not None:
        times = np.concatenate((base_grid.points, times))
    return TimeGrid.from_points(times)


def _check_probe(t, epsilons, pair):
    epsilons = as_vector(epsilons, "epsilons")
    if np.any(epsilons < 0.0):
        raise ValueError("epsilons must be nonnegative, got %s" % epsilons)
    if t < 0.0 or t + epsilons.max() > pair.horizon:
        raise ValueError("t + max eps must lie in [0, %s]" % pair.horizon)
    return epsilons


def mean_square_modulus(t, epsilons, spec, pair, n_samples, seed, y0=None,
                        base_grid=None, threads=1, first_stream=0,
                        force=False) -> ContinuityEstimate:
    """
    Coupled estimates of E||Y(t + eps) - Y(t)||^2.

    Parameters
    ----------
    t : float
        base time
    epsilons : array-like
        nonnegative lags with t + eps <= T
    spec, pair
        noise with weak second moments and operator pair
    n_samples : int
        number of replicates
    seed : int
        run seed
    y0 : array-like
        initial condition, None for 0
    base_grid : TimeGrid
        grid merged with the probe times

    Returns
    -------
    ContinuityEstimate
        estimates in the order of epsilons
    """
    if not spec.has_weak_second_moments():
        raise ValueError("infinite second moment: %s has stable components"
                         % spec.describe())
    epsilons = _check_probe(t, epsilons, pair)
    grid = _probe_grid(t, epsilons, base_grid)
    record = [grid.index_of(t)] + [grid.index_of(t + eps)
                                   for eps in epsilons]
    states = simulate_batch(spec, pair, grid, y0, seed, n_samples, record,
                            threads=threads, first_stream=first_stream,
                            force=force)
    estimates, errors = [], []
    for pos in range(1, len(record)):
        gaps = np.sum((states[:, pos, :] - states[:, 0, :]) ** 2, axis=1)
        mean, error = _mean_and_error(gaps)
        estimates.append(mean)
        errors.append(error)
    return ContinuityEstimate(epsilons, np.array(estimates),
                              np.array(errors))


def stochastic_continuity_probe(t, epsilons, v, delta, spec, pair,
                                n_samples, seed, y0=None, base_grid=None,
                                threads=1, first_stream=0,
                                force=False) -> ContinuityEstimate:
    """
    Coupled estimates of P(|<Y(t + eps) - Y(t), v>| > delta) with binomial
    standard errors.
    """
    epsilons = _check_probe(t, epsilons, pair)
    if not delta > 0.0:
        raise ValueError("delta must be positive, got %s" % delta)
    grid = _probe_grid(t, epsilons, base_grid)
    record = [grid.index_of(t)] + [grid.index_of(t + eps)
                                   for eps in epsilons]
    v = as_vector(v, "v", length=pair.n_modes)
    if y0 is None:
        samples = projected_samples(spec, pair, grid, v, record, n_samples,
                                    seed, threads=threads,
                                    first_stream=first_stream, force=force)
    else:
        states = simulate_batch(spec, pair, grid, y0, seed, n_samples,
                                record, modes=range(v.size), threads=threads,
                                first_stream=first_stream, force=force)
        samples = states @ v
    gaps = np.abs(samples[:, 1:] - samples[:, :1])
    estimates = np.mean(gaps > delta, axis=0)
    errors = np.sqrt(estimates * (1.0 - estimates) / samples.shape[0])
    return ContinuityEstimate(epsilons, estimates, errors)


def decreasing_toward_zero(estimate, n_sigma=2.0) -> bool:
    """
    True when the estimates do not increase, beyond n_sigma combined
    standard errors, as eps decreases.
    """
    order = np.argsort(-np.asarray(estimate.epsilons))
    values = estimate.estimates[order]
    errors = estimate.std_errors[order]
    band = n_sigma * np.hypot(errors[:-1], errors[1:])
    return bool(np.all(values[1:] <= values[:-1] + band))
