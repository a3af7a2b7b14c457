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
Tail mass of the cylindrical Levy measure seen through B.
"""
import math

import numpy as np
from scipy import special

from cylsim.core.utils import as_vector
from cylsim.core.utils import fsum
from cylsim.noise.laws import COMPOUND_POISSON
from cylsim.noise.laws import STABLE
from cylsim.noise.laws import stable_levy_constant


def levy_tail_mass(spec, pair_b, c, n) -> float:
    """
    Mass mu({u : sum_{k<=n} <u, B* h_k>^2 > c}).

    Parameters
    ----------
    spec : CylindricalNoiseSpec
        the noise
    pair_b : array-like
        diagonal coefficients b_k of B (at least n of them)
    c : float
        positive level
    n : int
        number of modes, 1 <= n <= spec.n_modes

    Returns
    -------
    float
        the tail mass (may be inf)

    Notes
    -----
    The Levy measure of series noise lives on the coordinate axes, so the
    mass is the sum of the one-dimensional tails mu_k(|b_k beta| > sqrt(c)).
    For canonical noise with B = Id the mass is
    C_alpha c^(-alpha/2) G(1/2) G((n+alpha)/2) / (G(n/2) G((1+alpha)/2)),
    which reduces to the one-dimensional tail for n = 1.

    Both cases use one normalisation: C_alpha is the two-sided tail constant
    of :func:`cylsim.noise.laws.stable_levy_constant`, and the level c
    bounds the squared norm, so the radius is sqrt(c) and the c exponent is
    -alpha/2. Formulas written as 1 / (c^alpha c_alpha) for a radius level
    c and a one-sided constant c_alpha give the same values after c ->
    sqrt(c) and 1 / c_alpha -> C_alpha.
    """
    c = float(c)
    if not c > 0.0 or not math.isfinite(c):
        raise ValueError("tail level c must be positive and finite, got %s"
                         % c)
    n = int(n)
    if not 1 <= n <= spec.n_modes:
        raise ValueError("n must lie in [1, %d], got %s" % (spec.n_modes, n))
    b = np.abs(as_vector(pair_b, "b"))
    if b.size < n:
        raise ValueError("%d coefficients of B given for n = %d"
                         % (b.size, n))
    b = b[:n]
    level = math.sqrt(c)
    if spec.is_canonical():
        if not np.all(b == 1.0):
            raise ValueError("canonical tail mass is implemented for B = Id "
                             "only")
        alpha = spec.alpha
        log_ratio = (special.gammaln(0.5) + special.gammaln((n + alpha) / 2.0)
                     - special.gammaln(n / 2.0)
                     - special.gammaln((1.0 + alpha) / 2.0))
        return (stable_levy_constant(alpha) * c ** (-alpha / 2.0) *
                math.exp(log_ratio))
    cols = spec.columns(n)
    terms = np.zeros(n)
    stable = cols.mask(STABLE) & (cols.scale * b > 0.0)
    terms[stable] = [stable_levy_constant(a) * (s / level) ** a
                     for a, s in zip(cols.alpha[stable],
                                     cols.scale[stable] * b[stable])]
    poisson = (cols.mask(COMPOUND_POISSON) &
               (cols.jump_std * b > 0.0) & (cols.rate > 0.0))
    spread = cols.jump_std[poisson] * b[poisson]
    terms[poisson] = cols.rate[poisson] * special.erfc(
        level / (spread * math.sqrt(2.0)))
    return fsum(terms)
