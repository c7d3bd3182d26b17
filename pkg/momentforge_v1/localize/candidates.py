# -*- coding: utf-8 -*-

# Copyright 2023 The MomentForge Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
#

"""The 2D temporal map of moment candidates.

A window split into ``k`` equal segments has one candidate per cell
``(i, j)`` with ``i <= j``, spanning segments ``i`` through ``j``.
"""

from typing import Tuple

import numpy as np  # type: ignore

from momentforge_v1 import exceptions
from momentforge_v1.ingest import features
from momentforge_v1.types import core
from momentforge_v1.types import ingest
from momentforge_v1.types import localize


def build_candidate_map(k: int) -> localize.CandidateMap:
    """The full upper-triangular map of ``k * (k + 1) / 2`` candidates."""
    if k < 1:
        raise exceptions.ValidationError(
            "segment count must be at least 1, got {}".format(k)
        )
    return localize.CandidateMap(
        num_segments=k, valid=[i <= j for i in range(k) for j in range(k)],
    )


def valid_cells(cmap: localize.CandidateMap) -> Tuple[np.ndarray, np.ndarray]:
    """Row and column indices of the valid cells, in row-major order."""
    k = cmap.num_segments
    mask = np.asarray(cmap.valid, dtype=bool).reshape(k, k)
    return np.nonzero(mask)


def candidate_interval(
    i: int, j: int, window: core.TemporalInterval, k: int
) -> core.TemporalInterval:
    """The time span of cell ``(i, j)`` of a window's map.

    Raises:
        ~.exceptions.CandidateIndexError: Unless ``0 <= i <= j < k``.
    """
    if not 0 <= i <= j < k:
        raise exceptions.CandidateIndexError(
            "cell ({}, {}) is outside the upper triangle of a {}-segment map".format(
                i, j, k
            )
        )
    span = window.end - window.start
    return core.TemporalInterval(
        start=window.start + i * span / k, end=window.start + (j + 1) * span / k
    )


def segment_features(
    fm: ingest.FeatureMatrix, window: core.TemporalInterval, k: int
) -> np.ndarray:
    """Mean-pool feature steps into ``k`` equal segments of a window.

    A step belongs to the segment whose half-open sub-span holds its
    center; a center on the window end belongs to the last segment. A
    segment holding no center takes the feature of the step nearest its
    midpoint.

    Returns:
        numpy.ndarray: A ``k x D`` float64 array.
    """
    if k < 1:
        raise exceptions.ValidationError(
            "segment count must be at least 1, got {}".format(k)
        )
    values = features.to_array(fm).astype(np.float64)
    step = float(fm.step_seconds)
    centers = (np.arange(fm.num_steps) + 0.5) * step
    edges = window.start + np.arange(k + 1) * (window.end - window.start) / k

    inside = (centers >= window.start) & (centers <= window.end)
    index = np.searchsorted(edges, centers[inside], side="right") - 1
    index = np.clip(index, 0, k - 1)

    sums = np.zeros((k, fm.dim), dtype=np.float64)
    np.add.at(sums, index, values[inside])
    counts = np.bincount(index, minlength=k)

    segs = np.empty_like(sums)
    filled = counts > 0
    segs[filled] = sums[filled] / counts[filled, None]
    if not filled.all():
        mids = (edges[:-1] + edges[1:]) / 2.0
        nearest = np.clip(np.floor(mids / step).astype(int), 0, fm.num_steps - 1)
        segs[~filled] = values[nearest[~filled]]
    return segs


def candidate_features(segs: np.ndarray, cmap: localize.CandidateMap) -> np.ndarray:
    """Mean of segment rows ``i..j`` for every valid cell, in row-major order."""
    rows, cols = valid_cells(cmap)
    prefix = np.vstack([np.zeros((1, segs.shape[1])), np.cumsum(segs, axis=0)])
    lengths = (cols - rows + 1)[:, None]
    return (prefix[cols + 1] - prefix[rows]) / lengths
