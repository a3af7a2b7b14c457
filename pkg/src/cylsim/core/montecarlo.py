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
Fan-out of Monte Carlo replicates over stream ids.

Replicates are cut in chunks of fixed size; chunk ``c`` is simulated from
stream id ``first_stream + c``. Chunks are computed in any order (possibly
on several threads) and reassembled by index, so the output depends on the
seed and chunk layout only.
"""
import logging
from concurrent.futures import ThreadPoolExecutor

import numpy as np

DEFAULT_CHUNK = 4096


def chunk_sizes(n_samples: int, chunk: int = DEFAULT_CHUNK) -> list:
    """
    Sizes of the successive chunks covering n_samples replicates.

    >>> chunk_sizes(10, 4)
    [4, 4, 2]
    """
    if n_samples < 1:
        raise ValueError("need at least one replicate, got %s" % n_samples)
    if chunk < 1:
        raise ValueError("chunk size must be positive, got %s" % chunk)
    full, rest = divmod(int(n_samples), int(chunk))
    return [chunk] * full + ([rest] if rest else [])


def fan_out(work, n_samples, threads=1, chunk=DEFAULT_CHUNK, first_stream=0,
            axis=0):
    """
    Runs ``work(stream_id, size)`` on every chunk and concatenates results.

    Parameters
    ----------
    work : callable
        function (stream_id, size) -> numpy array with ``size`` entries
        along ``axis``
    n_samples : int
        total number of replicates
    threads : int
        number of worker threads
    chunk : int
        replicates per chunk
    first_stream : int
        stream id of the first chunk
    axis : int
        replicate axis of the arrays returned by work

    Returns
    -------
    numpy.ndarray
        the concatenation of all chunks in stream order
    """
    logger = logging.getLogger(__name__)
    sizes = chunk_sizes(n_samples, chunk)
    jobs = [(first_stream + index, size) for index, size in enumerate(sizes)]
    logger.debug("Monte Carlo: %d replicates in %d chunks on %d threads",
                 n_samples, len(jobs), threads)
    if threads <= 1 or len(jobs) == 1:
        parts = [work(stream_id, size) for stream_id, size in jobs]
    else:
        with ThreadPoolExecutor(max_workers=int(threads),
                                thread_name_prefix="montecarlo") as pool:
            parts = list(pool.map(lambda job: work(*job), jobs))
    return np.concatenate(parts, axis=axis)
