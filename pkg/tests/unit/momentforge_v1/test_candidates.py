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

import numpy as np
import pytest

from momentforge_v1 import exceptions
from momentforge_v1 import intervals
from momentforge_v1.ingest import features
from momentforge_v1.localize import candidates
from momentforge_v1.types import localize


@pytest.mark.parametrize("k", range(1, 65))
def test_map_cardinality_and_full_window(k):
    cmap = candidates.build_candidate_map(k)
    window = intervals.interval(20, 60)

    rows, cols = candidates.valid_cells(cmap)

    assert len(rows) == k * (k + 1) // 2
    assert np.all(rows <= cols)
    full = candidates.candidate_interval(0, k - 1, window, k)
    assert intervals.as_pair(full) == (20, 60)


def test_valid_cells_row_major():
    rows, cols = candidates.valid_cells(candidates.build_candidate_map(3))

    assert list(zip(rows.tolist(), cols.tolist())) == [
        (0, 0),
        (0, 1),
        (0, 2),
        (1, 1),
        (1, 2),
        (2, 2),
    ]


def test_candidate_interval():
    window = intervals.interval(0, 40)

    cell = candidates.candidate_interval(2, 3, window, 16)

    assert intervals.as_pair(cell) == (5.0, 10.0)


@pytest.mark.parametrize("i,j", [(3, 2), (-1, 0), (0, 16)])
def test_candidate_interval_outside_triangle(i, j):
    with pytest.raises(exceptions.CandidateIndexError):
        candidates.candidate_interval(i, j, intervals.interval(0, 40), 16)


def test_build_candidate_map_rejects_zero():
    with pytest.raises(exceptions.ValidationError):
        candidates.build_candidate_map(0)


def test_segment_features_two_steps_per_segment():
    values = np.arange(8, dtype=np.float32)[:, None] * np.ones((1, 2), dtype=np.float32)
    fm = features.from_array("clip_a", values, 10.0)

    segs = candidates.segment_features(fm, intervals.interval(0, 80), 4)

    # Segment i pools steps 2i and 2i + 1.
    np.testing.assert_allclose(segs[:, 0], [0.5, 2.5, 4.5, 6.5])
    np.testing.assert_allclose(segs[:, 1], [0.5, 2.5, 4.5, 6.5])


def test_empty_segment_takes_nearest_step():
    values = np.arange(4, dtype=np.float32)[:, None]
    fm = features.from_array("clip_a", values, 10.0)

    # 8 segments of 5s over [0, 40]: only every other segment holds a center.
    segs = candidates.segment_features(fm, intervals.interval(0, 40), 8)

    np.testing.assert_allclose(segs[:, 0], [0, 0, 1, 1, 2, 2, 3, 3])


def test_candidate_features_are_segment_means():
    segs = np.array([[1.0, 0.0], [0.0, 1.0], [2.0, 2.0]])
    cmap = candidates.build_candidate_map(3)

    cells = candidates.candidate_features(segs, cmap)

    np.testing.assert_allclose(
        cells,
        [
            [1.0, 0.0],
            [0.5, 0.5],
            [1.0, 1.0],
            [0.0, 1.0],
            [1.0, 1.5],
            [2.0, 2.0],
        ],
    )


def test_candidate_map_message():
    cmap = candidates.build_candidate_map(2)

    assert isinstance(cmap, localize.CandidateMap)
    assert list(cmap.valid) == [True, True, False, True]
