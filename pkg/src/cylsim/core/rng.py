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
Counter-based random streams.

Every random draw in cylsim comes from a Philox generator keyed by a
SeedSequence built from ``(seed, stream_id, slot)``. The slot is 0 for
streams shared by all modes and ``mode + 1`` for per-mode sub-streams, so a
stream is fully determined by its key and never by scheduling order.
"""
import numpy as np

MAX_SEED = 2 ** 64


def check_seed(seed) -> int:
    """Validates a 64-bit unsigned seed."""
    seed = int(seed)
    if not 0 <= seed < MAX_SEED:
        raise ValueError("seed must be a 64-bit unsigned integer, got %s"
                         % seed)
    return seed


def stream(seed: int, stream_id: int, mode: int = None):
    """
    Returns the generator of one stream.

    Parameters
    ----------
    seed : int
        64-bit run seed
    stream_id : int
        non-negative stream identifier (replicate chunk, path, ...)
    mode : int
        zero-based mode index for per-mode sub-streams, None for the
        joint stream

    Returns
    -------
    numpy.random.Generator
        a Philox-backed generator
    """
    if int(stream_id) < 0:
        raise ValueError("stream_id must be non-negative, got %s" % stream_id)
    slot = 0 if mode is None else int(mode) + 1
    sequence = np.random.SeedSequence(entropy=check_seed(seed),
                                      spawn_key=(int(stream_id), slot))
    return np.random.Generator(np.random.Philox(sequence))
