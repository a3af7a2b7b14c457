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
Stochastic integrability checkers.

Infinite series are decided from dyadic partial sums: the terms of the
blocks (n/2, n] for n = start 2^j, j = 1..points, give a fitted term
exponent e (terms ~ k^e). The series is declared Integrable when
e < -1 - margin, NotIntegrable when e >= -1 - margin / 2 and Inconclusive
in between. Generators with finitely many terms give finite sums.
"""
import logging
import math
from collections import namedtuple

import numpy as np
from scipy import special

from cylsim.core.quadrature import DEFAULT_TOL
from cylsim.core.quadrature import QuadratureError
from cylsim.core.quadrature import integrate_scalar
from cylsim.core.quadrature import integrate_vector
from cylsim.core.sequences import ExplicitSequence
from cylsim.core.sequences import as_sequence
from cylsim.core.utils import fmt
from cylsim.core.utils import fsum
from cylsim.noise.laws import COMPOUND_POISSON
from cylsim.noise.laws import GAUSSIAN
from cylsim.noise.laws import STABLE
from cylsim.noise.laws import CylindricalNoiseSpec
from cylsim.noise.laws import ExplicitLaws
from cylsim.noise.laws import LawFamily
from cylsim.noise.laws import as_law_source
from cylsim.noise.laws import check_alpha
from cylsim.noise.laws import stable_truncated_moment
from cylsim.semigroup.pair import decay_integral

INTEGRABLE = "Integrable"
NOT_INTEGRABLE = "NotIntegrable"
INCONCLUSIVE = "Inconclusive"

DEFAULT_MARGIN = 0.1
TREND_START = 64
TREND_POINTS = 8
CANONICAL_FIRST_LEVEL = 6
CANONICAL_MAX_START = 2 ** 14

# s = T exp(-y) maps [0, T] to y in [0, inf); beyond this y the integrand
# is replaced by its value at s = 0
_LOG_TIME_CUTOFF = 60.0

# standard normal quantile beyond which the tail mass is negligible
_GAUSSIAN_TAIL_CUT = 40.0

_SEVERITY = {INTEGRABLE: 0, INCONCLUSIVE: 1, NOT_INTEGRABLE: 2}


class CheckVerdict(namedtuple("CheckVerdict", ["decision", "witness",
                                               "detail"])):
    """
    Outcome of an integrability check.

    The witness is the value of the decisive series or integral for
    Integrable verdicts, and a divergence rate estimate otherwise.
    """
    __slots__ = ()

    @classmethod
    def integrable(cls, witness, detail=""):
        return cls(INTEGRABLE, float(witness), detail)

    @classmethod
    def not_integrable(cls, witness, detail=""):
        return cls(NOT_INTEGRABLE, float(witness), detail)

    @classmethod
    def inconclusive(cls, witness, detail=""):
        return cls(INCONCLUSIVE, float(witness), detail)

    def is_integrable(self) -> bool:
        return self.decision == INTEGRABLE


def combine_verdicts(verdicts) -> CheckVerdict:
    """Most severe of several verdicts (NotIntegrable over Inconclusive)."""
    verdicts = list(verdicts)
    worst = max(verdicts, key=lambda v: _SEVERITY[v.decision])
    if worst.decision == INTEGRABLE:
        return CheckVerdict.integrable(
            fsum(v.witness for v in verdicts),
            "; ".join(v.detail for v in verdicts if v.detail))
    return worst


def _finite_limit(*sequences):
    lengths = [seq.length for seq in sequences if seq.length is not None]
    return min(lengths) if lengths else None


def series_trend(term_fn, limit=None, margin=DEFAULT_MARGIN,
                 start=TREND_START, points=TREND_POINTS) -> CheckVerdict:
    """
    Decides the convergence of a series of nonnegative terms.

    Parameters
    ----------
    term_fn : callable
        n -> array of the first n terms
    limit : int
        number of terms of a finite series, None for an infinite one
    margin : float
        exponent margin of the decision
    start : int
        first dyadic partial sum
    points : int
        number of dyadic blocks used in the fit

    Returns
    -------
    CheckVerdict
        Integrable with the (extrapolated) sum, NotIntegrable with the
        growth exponent of the partial sums, or Inconclusive
    """
    logger = logging.getLogger(__name__)
    if limit is not None:
        terms = np.asarray(term_fn(int(limit)), dtype=float)
        if not np.all(np.isfinite(terms)):
            return CheckVerdict.not_integrable(
                math.inf, "non-finite term among %d" % terms.size)
        return CheckVerdict.integrable(
            fsum(terms), "finite sum of %d terms" % terms.size)
    sizes = start * 2 ** np.arange(points + 1)
    terms = np.asarray(term_fn(int(sizes[-1])), dtype=float)
    if not np.all(np.isfinite(terms)):
        return CheckVerdict.not_integrable(math.inf, "non-finite term")
    head = fsum(terms[:start])
    blocks = np.array([fsum(terms[low:high])
                       for low, high in zip(sizes[:-1], sizes[1:])])
    total = head + fsum(blocks)
    if not np.any(blocks[points // 2:]):
        return CheckVerdict.integrable(
            total, "terms vanish beyond %d" % sizes[points // 2])
    positive = blocks > 0.0
    if positive.sum() < 3:
        return CheckVerdict.inconclusive(
            total, "only %d nonzero dyadic blocks" % positive.sum())
    log_n = np.log(sizes[1:][positive].astype(float))
    slope, _ = np.polyfit(log_n, np.log(blocks[positive]) - log_n, 1)
    logger.debug("fitted term exponent %s over %d blocks", slope,
                 positive.sum())
    if slope < -1.0 - margin:
        ratio = 2.0 ** (slope + 1.0)
        tail = blocks[-1] * ratio / (1.0 - ratio)
        return CheckVerdict.integrable(
            total + tail, "terms decay like k^%.3f" % slope)
    if slope >= -1.0 - margin / 2.0:
        return CheckVerdict.not_integrable(
            slope + 1.0, "terms decay like k^%.3f, partial sums grow "
                         "like n^%.3f" % (slope, slope + 1.0))
    return CheckVerdict.inconclusive(
        slope + 1.0, "term exponent %.3f within the margin of -1" % slope)


def _nonpositive_guard(lambdas):
    if np.any(lambdas <= 0.0):
        bad = int(np.argmax(lambdas <= 0.0)) + 1
        raise ValueError("reduced stable criterion needs lambda_k > 0, "
                         "lambda_%d = %s" % (bad, fmt(lambdas[bad - 1])))


def check_series_stable(pair, sigmas, alpha,
                        margin=DEFAULT_MARGIN) -> CheckVerdict:
    """
    Decides sum_k |b_k sigma_k|^alpha / lambda_k < inf.

    Parameters
    ----------
    pair : SpectralOperatorPair
        eigenvalues and coefficients of B
    sigmas
        scales of the stable coordinates (number, list or Sequence)
    alpha : float
        common stability index
    margin : float
        exponent margin of the trend decision

    Raises
    ------
    ValueError
        when some lambda_k <= 0
    """
    alpha = check_alpha(alpha)
    sigmas = as_sequence(sigmas)

    def terms(n):
        lambdas = pair.lambda_values(n)
        _nonpositive_guard(lambdas)
        scales = np.abs(pair.b_values(n) * sigmas.values(n))
        return scales ** alpha / lambdas
    return series_trend(terms, _finite_limit(pair.lambda_seq, pair.b_seq,
                                             sigmas), margin)


def _law_source(laws):
    if isinstance(laws, CylindricalNoiseSpec):
        return laws.laws
    return as_law_source(laws)


def stable_profile(laws):
    """
    (alpha, scales) when every law is stable with a common index, None
    otherwise.
    """
    source = _law_source(laws)
    if isinstance(source, LawFamily):
        if source.kind != STABLE:
            return None
        return source.alpha, source.parameters["scale"]
    if isinstance(source, ExplicitLaws):
        cols = source.columns(source.length)
        if not np.all(cols.mask(STABLE)):
            return None
        alphas = np.unique(cols.alpha)
        if alphas.size != 1:
            return None
        return float(alphas[0]), ExplicitSequence(cols.scale)
    return None


def _poisson_truncated_moment(spread):
    # E min(spread^2 Z^2, 1) for Z standard normal; beyond the cut the
    # Gaussian tail terms are below double precision
    spread = np.asarray(spread, dtype=float)
    out = np.zeros_like(spread)
    live = spread > 0.0
    small = live & (spread < 1.0 / _GAUSSIAN_TAIL_CUT)
    out[small] = spread[small] ** 2
    full = live & ~small
    cut = 1.0 / spread[full]
    half = cut / math.sqrt(2.0)
    density = np.exp(-0.5 * cut * cut) / math.sqrt(2.0 * math.pi)
    out[full] = (spread[full] ** 2 * (special.erf(half) -
                                      2.0 * cut * density) +
                 special.erfc(half))
    return out


def _jump_integrals(cols, lambdas, b, horizon, tol):
    """
    int_0^T int min(e^{-2 lambda s} b^2 beta^2, 1) mu_k(d beta) ds for the
    stable and compound Poisson modes, by vector quadrature in log time.
    """
    n = lambdas.size
    out = np.zeros(n)
    stable = cols.mask(STABLE) & (np.abs(b * cols.scale) > 0.0)
    poisson = (cols.mask(COMPOUND_POISSON) & (cols.rate > 0.0) &
               (np.abs(b * cols.jump_std) > 0.0))
    active = np.flatnonzero(stable | poisson)
    if active.size == 0:
        return out
    lam = lambdas[active]
    is_stable = stable[active]
    units = np.zeros(active.size)
    for alpha in np.unique(cols.alpha[active][is_stable]):
        units[is_stable & (cols.alpha[active] == alpha)] = (
            stable_truncated_moment(alpha))
    alpha = np.where(is_stable, cols.alpha[active], 2.0)
    radius = np.where(is_stable, np.abs(b * cols.scale)[active],
                      np.abs(b * cols.jump_std)[active])
    rate = cols.rate[active]

    def profile(s):
        r = radius * np.exp(-lam * s)
        return np.where(is_stable, units * r ** alpha,
                        rate * _poisson_truncated_moment(r))
    # normalized so that every component is of order one
    weight = np.maximum(lam, 1.0 / horizon) / profile(0.0)

    def integrand(y):
        s = horizon * math.exp(-y)
        return weight * s * profile(s)
    body = integrate_vector(integrand, 0.0, _LOG_TIME_CUTOFF, tol=tol)
    head = weight * profile(0.0) * horizon * math.exp(-_LOG_TIME_CUTOFF)
    out[active] = (body + head) / weight
    return out


def _gaussian_traces(cols, lambdas, b, horizon):
    out = np.zeros(lambdas.size)
    gaussian = cols.mask(GAUSSIAN)
    out[gaussian] = (b[gaussian] ** 2 * cols.variance[gaussian] *
                     decay_integral(lambdas[gaussian], 2.0, horizon))
    return out


def check_series_general(pair, laws, margin=DEFAULT_MARGIN,
                         tol=DEFAULT_TOL) -> CheckVerdict:
    """
    Decides sum_k int_0^T int (e^{-2 lambda_k s} |b_k beta|^2 ^ 1)
    mu_k(d beta) ds < inf for series noise with arbitrary coordinate laws.

    Stable and compound Poisson modes are integrated by adaptive vector
    quadrature; Gaussian modes contribute their trace terms
    b_k^2 var_k (1 - e^{-2 lambda_k T}) / (2 lambda_k). A quadrature
    failure yields an Inconclusive verdict.

    Parameters
    ----------
    pair : SpectralOperatorPair
        eigenvalues and coefficients of B
    laws
        a series CylindricalNoiseSpec or a law source
    """
    source = _law_source(laws)
    horizon = pair.horizon

    def terms(n):
        cols = source.columns(n)
        lambdas = pair.lambda_values(n)
        b = pair.b_values(n)
        return (_jump_integrals(cols, lambdas, b, horizon, tol) +
                _gaussian_traces(cols, lambdas, b, horizon))
    try:
        return series_trend(terms, _finite_limit(pair.lambda_seq,
                                                 pair.b_seq, source),
                            margin)
    except QuadratureError as err:
        return CheckVerdict.inconclusive(math.nan, str(err))


def check_gaussian_trace(pair, laws, margin=DEFAULT_MARGIN) -> CheckVerdict:
    """
    Decides the trace condition int_0^T tr[T(t)B Q B* T(t)*] dt < inf of
    the Gaussian coordinates.
    """
    source = _law_source(laws)

    def terms(n):
        return _gaussian_traces(source.columns(n), pair.lambda_values(n),
                                pair.b_values(n), pair.horizon)
    return series_trend(terms, _finite_limit(pair.lambda_seq, pair.b_seq,
                                             source), margin)


def check_second_moment_condition(pair,
                                  margin=DEFAULT_MARGIN) -> CheckVerdict:
    """
    Decides int_0^T ||T(s)B||_HS^2 ds < inf, sufficient for a solution with
    finite second moments under noise with weak second moments.
    """
    def terms(n):
        return (pair.b_values(n) ** 2 *
                decay_integral(pair.lambda_values(n), 2.0, pair.horizon))
    return series_trend(terms, _finite_limit(pair.lambda_seq, pair.b_seq),
                        margin)


def check_drift_condition(pair, spec, margin=DEFAULT_MARGIN) -> CheckVerdict:
    """
    Linear drift criterion sum_k (a_k b_k)^2 min(1 / (2 lambda_k), T) < inf.
    """
    if spec.drift is None:
        return CheckVerdict.integrable(0.0, "no drift")
    drift = spec.drift

    def terms(n):
        lambdas = pair.lambda_values(n)
        spread = np.full(n, pair.horizon)
        positive = lambdas > 0.0
        spread[positive] = np.minimum(0.5 / lambdas[positive], pair.horizon)
        return (drift.values(n) * pair.b_values(n)) ** 2 * spread
    return series_trend(terms, _finite_limit(pair.lambda_seq, pair.b_seq,
                                             drift), margin)


def _canonical_start(lambdas, s, cap=CANONICAL_MAX_START):
    # first dyadic index where exp(-2 lambda_k s) has started to decay;
    # stays put once lambda_k stops growing
    start = TREND_START
    while (start < cap and 2.0 * lambdas[start - 1] * s < 1.0 and
           lambdas[2 * start - 1] > lambdas[start - 1]):
        start *= 2
    return start


def check_canonical(pair, alpha, margin=DEFAULT_MARGIN, tol=DEFAULT_TOL,
                    first_level=CANONICAL_FIRST_LEVEL,
                    points=TREND_POINTS) -> CheckVerdict:
    """
    Decides int_0^T ||T(s)B||_HS^alpha ds < inf for canonical
    alpha-stable noise.

    The squared norm H(s) = sum_k b_k^2 exp(-2 lambda_k s) is evaluated at
    s = T 2^-j for ``points`` consecutive levels j starting at
    ``first_level``, each by the series trend procedure. A divergent H at
    any level gives NotIntegrable. For growing eigenvalues the dyadic
    blocks of each level start where 2 lambda_k s reaches 1, so that the
    exponential cut-off lies inside the fitted range. Otherwise the
    blow-up exponent rho of H(s) ~ s^-rho is fitted and the integral is
    finite iff rho alpha / 2 < 1 (within the margin); the witness is the
    quadrature value of the integral completed by a power-law head on
    (0, s_min).
    """
    logger = logging.getLogger(__name__)
    alpha = check_alpha(alpha)
    horizon = pair.horizon
    limit = _finite_limit(pair.lambda_seq, pair.b_seq)
    levels = horizon * 2.0 ** -np.arange(first_level, first_level + points)
    if limit is not None:
        starts = [TREND_START] * points
        n_max = limit
    else:
        leading = pair.lambda_values(2 * CANONICAL_MAX_START)
        starts = [_canonical_start(leading, s) for s in levels]
        n_max = max(starts) * 2 ** TREND_POINTS
    lambdas = pair.lambda_values(n_max)
    weights = pair.b_values(n_max) ** 2
    norms = []
    for s, start in zip(levels, starts):
        verdict = series_trend(
            lambda n, s=s: weights[:n] * np.exp(-2.0 * lambdas[:n] * s),
            limit, margin, start=start)
        if verdict.decision == NOT_INTEGRABLE:
            return CheckVerdict.not_integrable(
                math.inf, "||T(s)B||_HS is infinite at s = %s (%s)"
                % (fmt(s), verdict.detail))
        if verdict.decision == INCONCLUSIVE:
            return CheckVerdict.inconclusive(
                verdict.witness, "||T(s)B||_HS undecided at s = %s (%s)"
                % (fmt(s), verdict.detail))
        norms.append(verdict.witness)
    norms = np.array(norms)
    if not np.any(norms > 0.0):
        return CheckVerdict.integrable(0.0, "B vanishes")
    if np.any(norms <= 0.0):
        return CheckVerdict.inconclusive(0.0, "vanishing norm at some s")
    log_s = np.log(levels)
    slope, offset = np.polyfit(log_s, np.log(norms), 1)
    rho = max(-slope, 0.0)
    exponent = rho * alpha / 2.0
    logger.debug("canonical check: rho = %s, exponent = %s", rho, exponent)
    if exponent >= 1.0 - margin / 2.0:
        return CheckVerdict.not_integrable(
            exponent, "||T(s)B||_HS^alpha ~ s^-%.3f" % exponent)
    if exponent >= 1.0 - margin:
        return CheckVerdict.inconclusive(
            exponent, "blow-up exponent %.3f within the margin of 1"
            % exponent)
    s_min = levels[-1]

    def integrand(s):
        return np.sum(weights * np.exp(-2.0 * lambdas * s)) ** (alpha / 2.0)
    try:
        body, _ = integrate_scalar(integrand, s_min, horizon, tol=tol,
                                   points=levels[1:-1])
    except QuadratureError as err:
        return CheckVerdict.inconclusive(math.nan, str(err))
    head = norms[-1] ** (alpha / 2.0) * s_min / (1.0 - exponent)
    return CheckVerdict.integrable(
        body + head, "||T(s)B||_HS^2 ~ s^-%.3f" % rho)


def integrability_verdict(spec, pair, margin=DEFAULT_MARGIN) -> CheckVerdict:
    """
    Existence verdict of the mild solution: the noise criterion of the
    spec combined with the drift criterion.
    """
    if spec.is_canonical():
        noise = check_canonical(pair, spec.alpha, margin)
    else:
        noise = check_series_general(pair, spec, margin)
    return combine_verdicts([noise, check_drift_condition(pair, spec,
                                                          margin)])
