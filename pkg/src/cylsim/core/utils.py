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
Various Utility functions
"""
import csv
import logging
import math
import os

import numpy as np


def data_file(path):
    """
    Utility function to find resources data file packaged along with code

    Parameters
    ----------
    path : path
        path to the resource file in the package

    Returns
    -------
        absolute path to the resource data file
    """
    return os.path.join(os.path.abspath(os.path.dirname(__file__)), path)


def fmt(value) -> str:
    """Format a real number with 17 significant digits."""
    return '%.17g' % float(value)


def fsum(values) -> float:
    """Compensated sum of an iterable of reals, in iteration order."""
    return math.fsum(float(v) for v in values)


def as_vector(values, name="vector", length=None) -> np.ndarray:
    """
    Converts values to a finite one dimensional float array.

    Parameters
    ----------
    values
        array-like of reals
    name : str
        name used in error messages
    length : int
        if given, the maximal accepted length

    Returns
    -------
    numpy.ndarray
        a 1-d float64 copy of values
    """
    vec = np.array(values, dtype=float, ndmin=1)
    if vec.ndim != 1:
        raise ValueError("%s must be one dimensional, got shape %s"
                         % (name, vec.shape))
    if not np.all(np.isfinite(vec)):
        raise ValueError("%s has non-finite entries" % name)
    if length is not None and vec.size > length:
        raise ValueError("%s has %d entries, more than the %d available "
                         "modes" % (name, vec.size, length))
    return vec


def pad(vec: np.ndarray, length: int) -> np.ndarray:
    """Zero-pads a truncated vector to the requested number of modes."""
    if vec.size >= length:
        return vec[:length]
    out = np.zeros(length)
    out[:vec.size] = vec
    return out


def write_csv(path, header, rows, comments=None):
    """
    Writes rows to a CSV file, formatting floats with 17 significant
    digits.

    Parameters
    ----------
    path : str
        output file
    header : list
        column names
    rows : iterable
        iterable of row sequences
    comments : list
        (key, value) pairs written first as ``# key=value`` lines

    Returns
    -------
    str
        the path written
    """
    logger = logging.getLogger(__name__)
    out_dir = os.path.dirname(path)
    if out_dir:
        os.makedirs(out_dir, exist_ok=True)
    with open(path, "w", newline="") as output:
        for key, value in comments or []:
            output.write("# %s=%s\n" % (key, value))
        writer = csv.writer(output, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_cell(cell) for cell in row])
    logger.info("Wrote %s", path)
    return path


def _cell(value):
    if isinstance(value, (float, np.floating)):
        return fmt(value)
    if isinstance(value, np.integer):
        return int(value)
    return value


def nonincreasing(values, slack=0.0, floor=0.0) -> bool:
    """
    True when every value is at most (1 + slack) times its predecessor plus
    an absolute floor.

    >>> nonincreasing([4.0, 2.1, 2.2], slack=0.2)
    True
    """
    values = [float(v) for v in values]
    return all(later <= (1.0 + slack) * earlier + floor
               for earlier, later in zip(values, values[1:]))
