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
Adaptive quadrature wrappers that report failures instead of returning
silently degraded values.
"""
import logging
import warnings

import numpy as np
from scipy import integrate

DEFAULT_TOL = 1e-10


class QuadratureError(RuntimeError):
    """Raised when an integral does not reach the requested tolerance."""

    def __init__(self, message, estimate=None, error=None):
        super().__init__(message)
        self.estimate = estimate
        self.error = error


def integrate_scalar(func, lower, upper, tol=DEFAULT_TOL, limit=200,
                     **kwargs):
    """
    Integrate a scalar function with QUADPACK.

    Parameters
    ----------
    func : callable
        integrand f(x)
    lower, upper : float
        integration limits (upper may be numpy.inf)
    tol : float
        absolute tolerance
    limit : int
        maximum number of subintervals
    kwargs
        forwarded to scipy.integrate.quad (weight, wvar, points)

    Returns
    -------
    (float, float)
        the integral and its error estimate

    Raises
    ------
    QuadratureError
        when QUADPACK flags a failure or the error estimate exceeds
        the tolerance by more than a factor 100
    """
    logger = logging.getLogger(__name__)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        result = integrate.quad(func, lower, upper, epsabs=tol,
                                epsrel=1e-12, limit=limit, full_output=1,
                                **kwargs)
    value, error = result[0], result[1]
    if len(result) > 3 and error > 100 * tol * max(1.0, abs(value)):
        raise QuadratureError("quadrature on [%s, %s] failed: %s"
                              % (lower, upper, result[3]),
                              estimate=value, error=error)
    if not np.isfinite(value):
        raise QuadratureError("quadrature on [%s, %s] is not finite"
                              % (lower, upper), estimate=value, error=error)
    logger.debug("quad [%s, %s] = %s (+/- %s)", lower, upper, value, error)
    return value, error


def integrate_vector(func, lower, upper, tol=DEFAULT_TOL):
    """
    Integrate a vector valued function with scipy's adaptive quad_vec.

    Returns
    -------
    numpy.ndarray
        the componentwise integrals

    Raises
    ------
    QuadratureError
        when quad_vec does not converge
    """
    value, error, info = integrate.quad_vec(func, lower, upper, epsabs=tol,
                                            epsrel=1e-12, norm="max",
                                            full_output=True)
    if not info.success:
        raise QuadratureError("vector quadrature on [%s, %s] failed: %s"
                              % (lower, upper, info.message),
                              estimate=value, error=error)
    return np.asarray(value, dtype=float)
