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
Samplers for the one-dimensional laws and noise increments on time grids.

Random streams follow :mod:`cylsim.core.rng`: for series noise every mode
draws from its own sub-stream ``(seed, stream_id, mode)``; canonical noise
draws the subordinator from the joint stream ``(seed, stream_id)`` and the
Gaussian factor of mode k from sub-stream k. The first m modes of an n-mode
table are therefore identical to an m-mode table.
"""
import logging
from collections import namedtuple

import numpy as np

from cylsim.core.rng import check_seed
from cylsim.core.rng import stream
from cylsim.core.utils import write_csv
from cylsim.noise.laws import COMPOUND_POISSON
from cylsim.noise.laws import GAUSSIAN
from cylsim.noise.laws import STABLE
from cylsim.noise.laws import check_alpha

HALF_PI = 0.5 * np.pi


def stable_samples(alpha, scale, rng, size=None):
    """
    Symmetric alpha-stable draws with CF exp(-|scale beta|^alpha).

    Chambers-Mallows-Stuck transform of U uniform on (-pi/2, pi/2) and W
    standard exponential; alpha = 1 uses the Cauchy case tan(U).

    Parameters
    ----------
    alpha : float
        stability index in (0, 2)
    scale : float or numpy.ndarray
        nonnegative scale, broadcast against size
    rng : numpy.random.Generator
        source of randomness
    size : int or tuple
        output shape, None for a scalar

    Returns
    -------
    numpy.ndarray or float
        the draws
    """
    alpha = check_alpha(alpha)
    if np.any(np.asarray(scale) < 0.0):
        raise ValueError("stable scale must be nonnegative, got %s" % scale)
    phi = rng.uniform(-HALF_PI, HALF_PI, size=size)
    if alpha == 1.0:
        return scale * np.tan(phi)
    w = rng.standard_exponential(size=size)
    draws = (np.sin(alpha * phi) / np.cos(phi) ** (1.0 / alpha) *
             (np.cos((1.0 - alpha) * phi) / w) ** ((1.0 - alpha) / alpha))
    return scale * draws


def one_dim_stable_sample(alpha, scale, rng) -> float:
    """One symmetric alpha-stable draw, see :func:`stable_samples`."""
    return float(stable_samples(alpha, scale, rng))


def positive_stable_samples(index, rng, size=None):
    """
    Positive stable draws with Laplace transform exp(-u^index), 0 < index < 1.

    Kanter's representation of U uniform on (0, pi) and E standard
    exponential, evaluated in logarithms.
    """
    index = float(index)
    if not 0.0 < index < 1.0:
        raise ValueError("positive stable index must lie in (0, 1), got %s"
                         % index)
    u = rng.uniform(0.0, np.pi, size=size)
    e = rng.standard_exponential(size=size)
    log_draw = (np.log(np.sin(index * u)) - np.log(np.sin(u)) / index +
                (1.0 - index) / index *
                (np.log(np.sin((1.0 - index) * u)) - np.log(e)))
    return np.exp(log_draw)


JumpRecord = namedtuple("JumpRecord", ["mode", "step", "offset", "size"])
JumpRecord.__doc__ = """
Compound Poisson jumps of a table: parallel arrays of mode index, step
index, position inside the step and jump size.
"""


def _empty_jumps():
    return JumpRecord(np.zeros(0, dtype=int), np.zeros(0, dtype=int),
                      np.zeros(0), np.zeros(0))


def law_increments(kind, params, dt, rng, size=None):
    """
    Driftless increments of one coordinate process over steps dt.

    Parameters
    ----------
    kind : str
        law name
    params : dict
        law parameters (alpha, scale, variance, rate, jump_std)
    dt : numpy.ndarray
        step lengths
    rng : numpy.random.Generator
        sub-stream of the mode
    size : int
        number of replicates, None for a single path

    Returns
    -------
    (numpy.ndarray, tuple)
        increments with shape ``dt.shape`` (+ ``(size,)``) and, for
        compound Poisson laws, the arrays (step, replicate, offset, jump)
        of individual jumps (None otherwise)
    """
    shape = dt.shape if size is None else dt.shape + (size,)
    steps = dt if size is None else dt[:, None]
    if kind == STABLE:
        alpha = params["alpha"]
        draws = stable_samples(alpha, params["scale"], rng, size=shape)
        return draws * steps ** (1.0 / alpha), None
    if kind == GAUSSIAN:
        draws = rng.standard_normal(size=shape)
        return np.sqrt(params["variance"] * steps) * draws, None
    if kind != COMPOUND_POISSON:
        raise ValueError("unknown law %r" % kind)
    counts = rng.poisson(params["rate"] * np.broadcast_to(steps, shape))
    flat = counts.ravel()
    cell = np.repeat(np.arange(flat.size), flat)
    width = np.broadcast_to(steps, shape).ravel()[cell]
    offsets = rng.uniform(0.0, 1.0, size=cell.size) * width
    jumps = params["jump_std"] * rng.standard_normal(size=cell.size)
    values = np.bincount(cell, weights=jumps,
                         minlength=flat.size).reshape(shape)
    if size is None:
        step, replicate = cell, np.zeros_like(cell)
    else:
        step, replicate = np.divmod(cell, size)
    return values, (step, replicate, offsets, jumps)


class IncrementTable:
    """
    Sampled noise increments on a time grid.

    ...

    Attributes
    ----------
    grid
        the TimeGrid the increments live on
    values : numpy.ndarray
        [n_steps x n_modes] array, values[j, k] = (L(t_{j+1}) - L(t_j))(e_k)
    seed : int
        run seed
    stream_id : int
        stream of the table
    drift : numpy.ndarray
        drift coordinates included in values
    jumps : JumpRecord
        compound Poisson jumps (positions and sizes) inside the steps
    spec_id : str
        fingerprint of the noise specification
    """

    def __init__(self, grid, values, seed=0, stream_id=0, drift=None,
                 jumps=None, spec_id=""):
        self.grid = grid
        self.values = np.asarray(values, dtype=float)
        if self.values.ndim != 2 or self.values.shape[0] != grid.n_steps:
            raise ValueError("increment table of shape %s does not match "
                             "a grid of %d steps"
                             % (self.values.shape, grid.n_steps))
        self.values.setflags(write=False)
        self.seed = seed
        self.stream_id = stream_id
        self.drift = (np.zeros(self.n_modes) if drift is None
                      else np.asarray(drift, dtype=float))
        self.jumps = _empty_jumps() if jumps is None else jumps
        self.spec_id = spec_id

    @property
    def n_steps(self) -> int:
        return self.values.shape[0]

    @property
    def n_modes(self) -> int:
        return self.values.shape[1]

    def cumulative(self, u=None) -> np.ndarray:
        """
        L(t_j)(u) for j = 0..N, u defaulting to every basis vector.

        Returns
        -------
        numpy.ndarray
            shape (N + 1,) for a given u, (N + 1, n_modes) otherwise
        """
        if u is None:
            incr = self.values
        else:
            u = np.asarray(u, dtype=float)
            incr = self.values[:, :u.size] @ u
        out = np.zeros((self.n_steps + 1,) + incr.shape[1:])
        np.cumsum(incr, axis=0, out=out[1:])
        return out

    def coarsen(self):
        """
        Table on the grid with every other point removed; increments of
        merged steps are summed pairwise and jump offsets are shifted into
        the merged step.
        """
        if self.n_steps % 2:
            raise ValueError("cannot coarsen a table of %d steps"
                             % self.n_steps)
        grid = self.grid.coarsen()
        values = self.values[0::2] + self.values[1::2]
        points = self.grid.points
        step = self.jumps.step // 2
        shift = points[self.jumps.step] - points[2 * step]
        jumps = JumpRecord(self.jumps.mode, step, self.jumps.offset + shift,
                           self.jumps.size)
        return IncrementTable(grid, values, self.seed, self.stream_id,
                              self.drift, jumps, self.spec_id)

    def head(self, n_modes):
        """Table restricted to the first n_modes modes."""
        if n_modes > self.n_modes:
            raise ValueError("table has %d modes, %d requested"
                             % (self.n_modes, n_modes))
        keep = self.jumps.mode < n_modes
        jumps = JumpRecord(*[field[keep] for field in self.jumps])
        return IncrementTable(self.grid, self.values[:, :n_modes], self.seed,
                              self.stream_id, self.drift[:n_modes], jumps,
                              self.spec_id)

    def rows(self):
        """Yields (t_index, mode, increment) in row-major order."""
        for j in range(self.n_steps):
            for k in range(self.n_modes):
                yield j, k + 1, self.values[j, k]

    def to_csv(self, path):
        """Dumps the table with header ``t_index,mode,increment``."""
        comments = [("seed", self.seed), ("stream_id", self.stream_id),
                    ("spec", self.spec_id)]
        return write_csv(path, ["t_index", "mode", "increment"], self.rows(),
                         comments=comments)


def sample_increments(spec, grid, n_modes, seed, stream_id) -> IncrementTable:
    """
    Samples the increments of the first n_modes coordinates of the noise.

    Parameters
    ----------
    spec : CylindricalNoiseSpec
        the noise
    grid : TimeGrid
        strictly increasing time grid
    n_modes : int
        number of modes, at most ``spec.n_modes``
    seed : int
        64-bit seed
    stream_id : int
        stream identifier

    Returns
    -------
    IncrementTable
        the sampled table, reproducible bit for bit from its arguments
    """
    logger = logging.getLogger(__name__)
    seed = check_seed(seed)
    n_modes = int(n_modes)
    if not 1 <= n_modes <= spec.n_modes:
        raise ValueError("n_modes must lie in [1, %d], got %s"
                         % (spec.n_modes, n_modes))
    dt = grid.steps()
    drift = spec.drift_vector(n_modes)
    values, jumps = draw_increments(spec, dt, range(n_modes), seed,
                                    stream_id)
    values = values[..., 0] + dt[:, None] * drift
    if jumps is not None:
        jumps = JumpRecord(jumps[0], jumps[1], jumps[3], jumps[4])
    logger.debug("sampled %d x %d increments, stream %d", grid.n_steps,
                 n_modes, stream_id)
    return IncrementTable(grid, values, seed, stream_id, drift, jumps,
                          spec.fingerprint())


def draw_increments(spec, dt, modes, seed, stream_id, size=None, cols=None):
    """
    Driftless increments of the selected modes for ``size`` replicates.

    Returns
    -------
    (numpy.ndarray, tuple)
        increments of shape (n_steps, len(modes), size or 1) and the
        compound Poisson jumps as arrays (position in modes, step,
        replicate, offset, jump), None when no mode has jumps
    """
    modes = list(modes)
    reps = 1 if size is None else size
    out = np.zeros((dt.size, len(modes), reps))
    if spec.is_canonical():
        index = spec.alpha / 2.0
        joint = stream(seed, stream_id)
        subordinator = (dt[:, None] ** (1.0 / index) *
                        positive_stable_samples(index, joint,
                                                size=(dt.size, reps)))
        radius = np.sqrt(2.0 * subordinator)
        for pos, mode in enumerate(modes):
            rng = stream(seed, stream_id, mode=mode)
            out[:, pos, :] = radius * rng.standard_normal(size=(dt.size,
                                                                reps))
        return out, None
    if cols is None:
        cols = spec.columns(max(modes) + 1)
    found = []
    for pos, mode in enumerate(modes):
        params = {field: getattr(cols, field)[mode]
                  for field in cols._fields[1:]}
        values, jumps = law_increments(cols.kind[mode], params, dt,
                                       stream(seed, stream_id, mode=mode),
                                       size=reps)
        out[:, pos, :] = values
        if jumps is not None and jumps[0].size:
            found.append((np.full(jumps[0].size, pos),) + jumps)
    if not found:
        return out, None
    return out, tuple(np.concatenate(parts) for parts in zip(*found))
