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
One-dimensional component laws, cylindrical noise specifications and
their symbols.
"""
import hashlib
import math
from collections import namedtuple
from functools import lru_cache

import numpy as np
from scipy import special

from cylsim.core.quadrature import integrate_scalar
from cylsim.core.sequences import as_sequence
from cylsim.core.utils import as_vector
from cylsim.core.utils import fsum
from cylsim.core.utils import pad

STABLE = "stable"
GAUSSIAN = "gaussian"
COMPOUND_POISSON = "compound_poisson"

LAW_KINDS = (STABLE, GAUSSIAN, COMPOUND_POISSON)


def check_alpha(alpha) -> float:
    """Validates a stability index strictly inside (0, 2)."""
    alpha = float(alpha)
    if not 0.0 < alpha < 2.0:
        raise ValueError("alpha must lie strictly inside (0, 2), got %s"
                         % alpha)
    return alpha


def _check_parameter(name, value) -> float:
    value = float(value)
    if not math.isfinite(value) or value < 0.0:
        raise ValueError("%s must be finite and nonnegative, got %s"
                         % (name, value))
    return value


class ComponentLaw(namedtuple("ComponentLaw", ["kind", "alpha", "scale",
                                               "variance", "rate",
                                               "jump_std"])):
    """
    Law of one coordinate process of a series noise.

    Build instances with :meth:`stable`, :meth:`gaussian` or
    :meth:`compound_poisson`; unused parameters hold 0 (alpha holds NaN
    outside the stable family).
    """
    __slots__ = ()

    def __new__(cls, kind, alpha=float("nan"), scale=0.0, variance=0.0,
                rate=0.0, jump_std=0.0):
        if kind not in LAW_KINDS:
            raise ValueError("unknown law %r, expected one of %s"
                             % (kind, ", ".join(LAW_KINDS)))
        if kind == STABLE:
            alpha = check_alpha(alpha)
        else:
            alpha = float("nan")
        return super().__new__(cls, kind, alpha,
                               _check_parameter("scale", scale),
                               _check_parameter("variance", variance),
                               _check_parameter("rate", rate),
                               _check_parameter("jump_std", jump_std))

    @classmethod
    def stable(cls, alpha, scale=1.0):
        """Symmetric alpha-stable law with CF exp(-t|scale beta|^alpha)."""
        return cls(STABLE, alpha=alpha, scale=scale)

    @classmethod
    def gaussian(cls, variance=1.0):
        """Brownian component with the given variance per unit time."""
        return cls(GAUSSIAN, variance=variance)

    @classmethod
    def compound_poisson(cls, rate=1.0, jump_std=1.0):
        """Compound Poisson law with centred Gaussian jumps."""
        return cls(COMPOUND_POISSON, rate=rate, jump_std=jump_std)

    def symbol(self, u):
        """One-dimensional symbol psi(u), vectorized over u."""
        u = np.asarray(u, dtype=float)
        if self.kind == STABLE:
            return -np.power(np.abs(self.scale * u), self.alpha)
        if self.kind == GAUSSIAN:
            return -0.5 * self.variance * u * u
        return self.rate * np.expm1(-0.5 * (self.jump_std * u) ** 2)

    def has_second_moment(self) -> bool:
        """True unless the law is a non-degenerate stable law."""
        return self.kind != STABLE or self.scale == 0.0

    def is_degenerate(self) -> bool:
        """True when the coordinate process is identically 0."""
        if self.kind == STABLE:
            return self.scale == 0.0
        if self.kind == GAUSSIAN:
            return self.variance == 0.0
        return self.rate == 0.0 or self.jump_std == 0.0


class LawColumns(namedtuple("LawColumns", ["kind", "alpha", "scale",
                                           "variance", "rate", "jump_std"])):
    """
    Column view of the laws of the first n modes, one array per field.
    """
    __slots__ = ()

    def __len__(self):
        return self.kind.size

    def mask(self, kind):
        """Boolean mask of the modes following the given law."""
        return self.kind == kind

    def laws(self) -> list:
        """Row view as a list of ComponentLaw."""
        return [ComponentLaw(*row) for row in zip(*self)]

    def take(self, indices):
        """Columns of the selected modes."""
        return LawColumns(*[col[indices] for col in self])


def _columns_from_laws(laws) -> LawColumns:
    return LawColumns(np.array([law.kind for law in laws], dtype=object),
                      *[np.array([getattr(law, field) for law in laws],
                                 dtype=float)
                        for field in LawColumns._fields[1:]])


class ExplicitLaws:
    """A finite list of per-mode laws."""

    def __init__(self, laws):
        self._laws = [law if isinstance(law, ComponentLaw)
                      else ComponentLaw(*law) for law in laws]
        self.length = len(self._laws)

    def columns(self, n) -> LawColumns:
        """Columns of the first n laws."""
        if n > self.length:
            raise ValueError("%d laws requested, only %d given"
                             % (n, self.length))
        return _columns_from_laws(self._laws[:n])

    def __repr__(self):
        return "laws(%r)" % (self._laws,)


class LawFamily:
    """
    Laws of one kind whose parameters follow mode-indexed sequences.

    Parameters
    ----------
    kind : str
        one of ``stable``, ``gaussian``, ``compound_poisson``
    alpha : float
        stability index of the stable family
    scale, variance, rate, jump_std
        numbers, lists or :class:`~cylsim.core.sequences.Sequence`
    """

    def __init__(self, kind, alpha=None, scale=1.0, variance=1.0, rate=1.0,
                 jump_std=1.0):
        if kind not in LAW_KINDS:
            raise ValueError("unknown law %r, expected one of %s"
                             % (kind, ", ".join(LAW_KINDS)))
        self.kind = kind
        self.alpha = check_alpha(alpha) if kind == STABLE else float("nan")
        self.parameters = {
            STABLE: {"scale": as_sequence(scale)},
            GAUSSIAN: {"variance": as_sequence(variance)},
            COMPOUND_POISSON: {"rate": as_sequence(rate),
                               "jump_std": as_sequence(jump_std)},
        }[kind]
        lengths = [seq.length for seq in self.parameters.values()
                   if seq.length is not None]
        self.length = min(lengths) if lengths else None

    def columns(self, n) -> LawColumns:
        """Columns of the first n laws of the family."""
        values = {field: np.zeros(n) for field in LawColumns._fields[2:]}
        for field, seq in self.parameters.items():
            column = seq.values(n)
            if not np.all(np.isfinite(column)) or np.any(column < 0.0):
                raise ValueError("%s sequence %r has negative or non-finite "
                                 "terms" % (field, seq))
            values[field] = column
        kinds = np.full(n, self.kind, dtype=object)
        return LawColumns(kinds, np.full(n, self.alpha), **values)

    def __repr__(self):
        return "family(%s, alpha=%r, %r)" % (self.kind, self.alpha,
                                            self.parameters)


class LawCycle:
    """Families used in turn: mode k follows families[(k - 1) % m]."""

    def __init__(self, families):
        if not families:
            raise ValueError("a law cycle needs at least one family")
        self.families = list(families)
        lengths = [fam.length for fam in self.families
                   if fam.length is not None]
        self.length = min(lengths) if lengths else None

    def columns(self, n) -> LawColumns:
        """Columns of the first n laws, picking the family of each mode."""
        picks = np.arange(n) % len(self.families)
        parts = [fam.columns(n) for fam in self.families]
        fields = []
        for index in range(len(LawColumns._fields)):
            stacked = np.stack([part[index] for part in parts])
            fields.append(stacked[picks, np.arange(n)])
        return LawColumns(*fields)

    def __repr__(self):
        return "cycle(%r)" % (self.families,)


def as_law_source(laws):
    """Wraps a list of ComponentLaw; passes families and cycles through."""
    if isinstance(laws, (LawFamily, LawCycle, ExplicitLaws)):
        return laws
    if isinstance(laws, ComponentLaw):
        return ExplicitLaws([laws])
    return ExplicitLaws(laws)


class CylindricalNoiseSpec:
    """
    Declarative description of a cylindrical Levy process L through its
    first ``n_modes`` coordinates.

    ...

    Attributes
    ----------
    kind : str
        ``series`` (independent coordinate laws) or ``canonical``
        (canonical alpha-stable)
    n_modes : int
        truncation level
    alpha : float
        stability index of the canonical variant
    laws
        per-mode law source of the series variant
    drift : Sequence
        coordinates of the linear drift, None for symmetric noise
    """
    SERIES = "series"
    CANONICAL = "canonical"

    def __init__(self, kind, n_modes, laws=None, alpha=None, drift=None):
        if kind not in (self.SERIES, self.CANONICAL):
            raise ValueError("unknown noise type %r" % kind)
        self.kind = kind
        self.n_modes = int(n_modes)
        if self.n_modes < 1:
            raise ValueError("n_modes must be positive, got %s" % n_modes)
        self.alpha = None
        self.laws = None
        if kind == self.SERIES:
            self.laws = as_law_source(laws)
            if (self.laws.length is not None and
                    self.laws.length < self.n_modes):
                raise ValueError("%d laws given for %d modes"
                                 % (self.laws.length, self.n_modes))
        else:
            self.alpha = check_alpha(alpha)
        self.drift = None if drift is None else as_sequence(drift)

    @classmethod
    def series(cls, laws, n_modes, drift=None):
        """Independent coordinate processes with the given laws."""
        return cls(cls.SERIES, n_modes, laws=laws, drift=drift)

    @classmethod
    def canonical(cls, alpha, n_modes, drift=None):
        """Canonical alpha-stable noise with CF exp(-t ||u||^alpha)."""
        return cls(cls.CANONICAL, n_modes, alpha=alpha, drift=drift)

    def is_series(self) -> bool:
        return self.kind == self.SERIES

    def is_canonical(self) -> bool:
        return self.kind == self.CANONICAL

    def columns(self, n=None) -> LawColumns:
        """Law columns of the first n modes (series noise only)."""
        if not self.is_series():
            raise ValueError("canonical noise has no per-mode laws")
        return self.laws.columns(self.n_modes if n is None else n)

    def drift_vector(self, n=None) -> np.ndarray:
        """Drift coordinates of the first n modes, zero padded."""
        n = self.n_modes if n is None else n
        if self.drift is None:
            return np.zeros(n)
        return pad(self.drift.values(self.drift.available(n)), n)

    def has_drift(self) -> bool:
        return self.drift is not None and bool(np.any(self.drift_vector()))

    def has_weak_second_moments(self) -> bool:
        """True when no coordinate carries a non-degenerate stable law."""
        if self.is_canonical():
            return False
        cols = self.columns()
        stable = cols.mask(STABLE)
        return not np.any(cols.scale[stable] > 0.0)

    def is_deterministic(self) -> bool:
        """True for series noise whose coordinates reduce to the drift."""
        if self.is_canonical():
            return False
        return all(law.is_degenerate() for law in self.columns().laws())

    def describe(self) -> str:
        """Stable textual description used for provenance."""
        if self.is_canonical():
            text = "canonical(alpha=%r, n_modes=%d" % (self.alpha,
                                                       self.n_modes)
        else:
            text = "series(%r, n_modes=%d" % (self.laws, self.n_modes)
        return text + ", drift=%r)" % (self.drift,)

    def fingerprint(self) -> str:
        """Short digest of :meth:`describe`."""
        return hashlib.sha256(self.describe().encode()).hexdigest()[:16]

    def __repr__(self):
        return self.describe()


def make_symbol(spec: CylindricalNoiseSpec, n: int):
    """
    Returns psi(u) for vectors u of length n, without argument checks.

    The real part of a series symbol is summed over modes in ascending
    order with compensated summation.
    """
    drift = spec.drift_vector(n)
    has_drift = bool(np.any(drift))
    if spec.is_canonical():
        alpha = spec.alpha

        def real_part(u):
            return -math.pow(float(np.linalg.norm(u)), alpha)
    else:
        cols = spec.columns(n)
        stable = cols.mask(STABLE)
        gaussian = cols.mask(GAUSSIAN)
        poisson = cols.mask(COMPOUND_POISSON)

        def real_part(u):
            terms = np.zeros(n)
            terms[stable] = -np.power(np.abs(cols.scale[stable] * u[stable]),
                                      cols.alpha[stable])
            terms[gaussian] = -0.5 * cols.variance[gaussian] * u[gaussian] ** 2
            terms[poisson] = cols.rate[poisson] * np.expm1(
                -0.5 * (cols.jump_std[poisson] * u[poisson]) ** 2)
            return fsum(terms)

    def psi(u):
        value = real_part(u)
        if has_drift:
            return complex(value, fsum(drift * u))
        return complex(value, 0.0)
    return psi


def symbol_eval(spec: CylindricalNoiseSpec, u) -> complex:
    """
    Evaluates the symbol Psi(u) of the noise.

    Parameters
    ----------
    spec : CylindricalNoiseSpec
        the noise
    u : array-like
        truncated vector with at most ``spec.n_modes`` entries

    Returns
    -------
    complex
        Psi(u), so that E exp(i L(t)u) = exp(t Psi(u))

    >>> from cylsim.noise.laws import CylindricalNoiseSpec
    >>> symbol_eval(CylindricalNoiseSpec.canonical(1.5, 2), [0.0, 1.0])
    (-1+0j)
    """
    vec = as_vector(u, "u", length=spec.n_modes)
    return make_symbol(spec, vec.size)(vec)


def _one_minus_cos_over_square(x):
    # (1 - cos x) / x^2 written without cancellation
    return 0.5 * np.sinc(x / (2.0 * np.pi)) ** 2


@lru_cache(maxsize=64)
def stable_levy_constant(alpha: float, tol: float = 1e-10) -> float:
    """
    Tail constant C_alpha of the standard symmetric alpha-stable law.

    The Levy measure of the law with CF exp(-|beta|^alpha) has two-sided
    tail mu(|x| > r) = C_alpha r^-alpha, i.e. density
    (alpha C_alpha / 2) |x|^(-1 - alpha). C_alpha solves
    alpha C_alpha int_0^inf (1 - cos x) x^(-1 - alpha) dx = 1, and the
    integral is computed by quadrature: an algebraic-weight rule on [0, 1]
    and a Fourier-weight rule for the oscillating tail.

    >>> round(stable_levy_constant(1.0) * 3.141592653589793, 8)
    2.0
    """
    alpha = check_alpha(alpha)
    head, _ = integrate_scalar(_one_minus_cos_over_square, 0.0, 1.0,
                               tol=tol, weight="alg",
                               wvar=(1.0 - alpha, 0.0))
    cosine_tail, _ = integrate_scalar(lambda x: x ** (-1.0 - alpha), 1.0,
                                      np.inf, tol=tol, weight="cos", wvar=1.0)
    integral = head + 1.0 / alpha - cosine_tail
    return 1.0 / (alpha * integral)


def stable_cos_integral(alpha: float) -> float:
    """
    Closed form of int_0^inf (1 - cos x) x^(-1 - alpha) dx, alpha != 1,
    used to cross-check :func:`stable_levy_constant`.
    """
    alpha = check_alpha(alpha)
    if alpha == 1.0:
        return math.pi / 2.0
    return -special.gamma(-alpha) * math.cos(math.pi * alpha / 2.0)


def stable_truncated_moment(alpha: float, radius: float = 1.0) -> float:
    """
    int min(radius^2 beta^2, 1) mu(d beta) for the standard symmetric
    alpha-stable Levy measure mu; equals radius^alpha times the value at
    radius 1.
    """
    alpha = check_alpha(alpha)
    unit = stable_levy_constant(alpha) * alpha * (1.0 / (2.0 - alpha) +
                                                  1.0 / alpha)
    return unit * abs(float(radius)) ** alpha

