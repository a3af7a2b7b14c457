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
Closed-form generators for mode-indexed sequences (eigenvalues,
coefficients of B, scales of the noise components, drift coordinates).

Mode indices k start at 1. A sequence is either infinite (closed form) or
finite (an explicit list without fill value).
"""
import numpy as np


class Sequence:
    """
    Base class of mode-indexed real sequences.

    Attributes
    ----------
    length : int
        number of available terms, None for infinite sequences
    """
    length = None

    def values(self, n: int) -> np.ndarray:
        """
        Returns the first n terms as a float array.

        Raises
        ------
        ValueError
            when more terms are requested than a finite sequence holds
        """
        if n < 0:
            raise ValueError("negative number of terms: %s" % n)
        if self.length is not None and n > self.length:
            raise ValueError("requested %d terms from a sequence of %d"
                             % (n, self.length))
        return self._values(np.arange(1, n + 1, dtype=float))

    def _values(self, k):
        raise NotImplementedError

    def is_finite(self) -> bool:
        """True when the sequence has a fixed number of terms."""
        return self.length is not None

    def available(self, n: int) -> int:
        """Number of terms that can be produced, capped at n."""
        if self.length is None:
            return n
        return min(n, self.length)


class ConstantSequence(Sequence):
    """x_k = value"""

    def __init__(self, value):
        self.value = float(value)

    def _values(self, k):
        return np.full(k.shape, self.value)

    def __repr__(self):
        return "constant(%r)" % self.value


class PowerSequence(Sequence):
    """x_k = factor * (k + offset) ** exponent"""

    def __init__(self, exponent, factor=1.0, offset=0.0):
        self.exponent = float(exponent)
        self.factor = float(factor)
        self.offset = float(offset)
        if self.offset <= -1.0:
            raise ValueError("power sequence offset must exceed -1, got %s"
                             % offset)

    def _values(self, k):
        return self.factor * np.power(k + self.offset, self.exponent)

    def __repr__(self):
        return "power(%r, factor=%r, offset=%r)" % (
            self.exponent, self.factor, self.offset)


class LogSequence(Sequence):
    """x_k = factor * log(k + shift)"""

    def __init__(self, factor=1.0, shift=1.0):
        self.factor = float(factor)
        self.shift = float(shift)
        if self.shift < 0.0:
            raise ValueError("log sequence shift must be >= 0, got %s"
                             % shift)

    def _values(self, k):
        return self.factor * np.log(k + self.shift)

    def __repr__(self):
        return "log(factor=%r, shift=%r)" % (self.factor, self.shift)


class ExplicitSequence(Sequence):
    """
    Explicit list of terms, optionally continued by a constant fill value.
    """

    def __init__(self, terms, fill=None):
        self.terms = np.array(terms, dtype=float, ndmin=1)
        if self.terms.ndim != 1:
            raise ValueError("explicit sequence must be a flat list")
        self.fill = None if fill is None else float(fill)
        self.length = None if fill is not None else self.terms.size

    def _values(self, k):
        n = k.size
        out = np.empty(n)
        head = min(n, self.terms.size)
        out[:head] = self.terms[:head]
        out[head:] = self.fill if self.fill is not None else np.nan
        return out

    def __repr__(self):
        return "explicit(%r, fill=%r)" % (self.terms.tolist(), self.fill)


def as_sequence(obj) -> Sequence:
    """
    Coerces numbers, lists, arrays and Sequence objects into a Sequence.

    >>> as_sequence(2.0).values(3).tolist()
    [2.0, 2.0, 2.0]
    >>> as_sequence([1, 2]).values(2).tolist()
    [1.0, 2.0]
    """
    if isinstance(obj, Sequence):
        return obj
    if np.isscalar(obj):
        return ConstantSequence(obj)
    return ExplicitSequence(obj)


def sequence_from_config(tree):
    """
    Builds a Sequence from a configuration value.

    Parameters
    ----------
    tree
        a number, a list of numbers, or a mapping with a ``type`` key among
        ``power``, ``log``, ``explicit`` and ``constant``

    Returns
    -------
    Sequence
        the generator described by the configuration
    """
    if isinstance(tree, (int, float)) and not isinstance(tree, bool):
        return ConstantSequence(tree)
    if isinstance(tree, list):
        return ExplicitSequence(tree)
    kind = tree.get("type")
    if kind == "power":
        return PowerSequence(tree.get("exponent"),
                             factor=tree.get("factor", 1.0),
                             offset=tree.get("offset", 0.0))
    if kind == "log":
        return LogSequence(factor=tree.get("factor", 1.0),
                           shift=tree.get("shift", 1.0))
    if kind == "explicit":
        return ExplicitSequence(tree.get("values"),
                                fill=tree.get("fill", None))
    if kind == "constant":
        return ConstantSequence(tree.get("value"))
    raise ValueError("unknown sequence type %r, expected one of power, "
                     "log, explicit, constant" % kind)
