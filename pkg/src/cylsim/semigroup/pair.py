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
Diagonal model of the generator A and of B on a shared basis.
"""
import logging
import math

import numpy as np

from cylsim.core.sequences import as_sequence
from cylsim.core.utils import as_vector
from cylsim.core.utils import fsum


class SpectralOperatorPair:
    """
    Eigenvalues lambda_k of -A and diagonal coefficients b_k of B.

    T(t)* h_k = exp(-lambda_k t) h_k and B* h_k = b_k e_k. Both sequences may
    be closed-form generators, so the pair can be extended beyond its
    truncation level for convergence checks.

    ...

    Attributes
    ----------
    lambda_seq, b_seq : Sequence
        generators of the eigenvalues and of the coefficients of B
    horizon : float
        time horizon T
    n_modes : int
        truncation level
    """

    def __init__(self, lambdas, b, horizon, n_modes=None):
        self.lambda_seq = as_sequence(lambdas)
        self.b_seq = as_sequence(b)
        self.horizon = float(horizon)
        if not self.horizon > 0.0 or not math.isfinite(self.horizon):
            raise ValueError("horizon must be positive and finite, got %s"
                             % horizon)
        if n_modes is None:
            n_modes = self.length
            if n_modes is None:
                raise ValueError("n_modes is required when lambdas and b "
                                 "are both infinite generators")
        self.n_modes = int(n_modes)
        if self.n_modes < 1:
            raise ValueError("n_modes must be positive, got %s" % n_modes)
        self.lambdas = self.lambda_values(self.n_modes)
        self.b = self.b_values(self.n_modes)
        if self.lambdas.max() < 1.0:
            logger = logging.getLogger(__name__)
            logger.warning("largest eigenvalue %s is below 1: the spectrum "
                           "does not look unbounded", self.lambdas.max())

    @classmethod
    def from_arrays(cls, lambdas, b, horizon):
        """Finite pair with explicit coefficient vectors."""
        lambdas = as_vector(lambdas, "lambdas")
        b = as_vector(b, "b")
        if lambdas.size != b.size:
            raise ValueError("%d eigenvalues for %d coefficients of B"
                             % (lambdas.size, b.size))
        return cls(lambdas, b, horizon)

    @property
    def length(self):
        """Number of modes the generators can produce, None if infinite."""
        lengths = [seq.length for seq in (self.lambda_seq, self.b_seq)
                   if seq.length is not None]
        return min(lengths) if lengths else None

    def lambda_values(self, n) -> np.ndarray:
        """First n eigenvalues, validated nonnegative."""
        values = self.lambda_seq.values(n)
        if not np.all(np.isfinite(values)) or np.any(values < 0.0):
            raise ValueError("eigenvalues must be finite and nonnegative, "
                             "got %r" % self.lambda_seq)
        return values

    def b_values(self, n) -> np.ndarray:
        """First n coefficients of B."""
        values = self.b_seq.values(n)
        if not np.all(np.isfinite(values)):
            raise ValueError("coefficients of B must be finite, got %r"
                             % self.b_seq)
        return values

    def extended(self, n):
        """The same generators truncated at n modes."""
        pair = SpectralOperatorPair.__new__(SpectralOperatorPair)
        pair.lambda_seq = self.lambda_seq
        pair.b_seq = self.b_seq
        pair.horizon = self.horizon
        pair.n_modes = int(n)
        pair.lambdas = self.lambda_values(pair.n_modes)
        pair.b = self.b_values(pair.n_modes)
        return pair

    def describe(self) -> str:
        return "pair(lambdas=%r, b=%r, T=%r, n_modes=%d)" % (
            self.lambda_seq, self.b_seq, self.horizon, self.n_modes)

    def __repr__(self):
        return self.describe()


def semigroup_apply(pair, t, v) -> np.ndarray:
    """
    Applies T(t)* coordinate-wise: v_k -> exp(-lambda_k t) v_k.

    >>> pair = SpectralOperatorPair.from_arrays([1.0, 2.0], [1.0, 1.0], 1.0)
    >>> semigroup_apply(pair, 0.0, [3.0, 4.0]).tolist()
    [3.0, 4.0]
    """
    t = float(t)
    if not t >= 0.0:
        raise ValueError("semigroup time must be nonnegative, got %s" % t)
    vec = as_vector(v, "v", length=pair.n_modes)
    return np.exp(-pair.lambdas[:vec.size] * t) * vec


def hs_norm_sq(pair, t, n) -> float:
    """
    Squared Hilbert-Schmidt norm sum_{k<=n} b_k^2 exp(-2 lambda_k t) of
    T(t)B restricted to the first n modes.
    """
    t = float(t)
    if not t > 0.0:
        raise ValueError("t must be positive, got %s" % t)
    n = int(n)
    if not 1 <= n <= pair.n_modes:
        raise ValueError("n must lie in [1, %d], got %s" % (pair.n_modes, n))
    return fsum(pair.b[:n] ** 2 * np.exp(-2.0 * pair.lambdas[:n] * t))


def decay_integral(lambdas, rate, t) -> np.ndarray:
    """
    int_0^t exp(-rate lambda_k s) ds per mode, with the limit t for
    lambda_k = 0.
    """
    lambdas = np.asarray(lambdas, dtype=float)
    out = np.full(lambdas.shape, float(t))
    positive = lambdas > 0.0
    scaled = rate * lambdas[positive]
    out[positive] = -np.expm1(-scaled * t) / scaled
    return out
