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

import math

import numpy as np
import pytest

from momentforge_v1 import intervals
from momentforge_v1.types import core


def span(start, end):
    return core.TemporalInterval(start=start, end=end)


def test_interval_builds_message():
    result = intervals.interval(10, 20)
    assert isinstance(result, core.TemporalInterval)
    assert intervals.as_pair(result) == (10.0, 20.0)


@pytest.mark.parametrize(
    "start,end", [(5.0, 4.0), (math.nan, 1.0), (0.0, math.inf)],
)
def test_interval_rejects_bad_bounds(start, end):
    with pytest.raises(ValueError):
        intervals.interval(start, end)


def test_iou_hand_computed():
    assert intervals.iou(span(0, 10), span(5, 15)) == pytest.approx(1 / 3, abs=1e-9)


def test_iou_exact_match():
    assert intervals.iou(span(10, 20), span(10, 20)) == 1.0


def test_iou_touching_intervals():
    assert intervals.iou(span(0, 10), span(10, 20)) == 0.0
    assert intervals.intersection_length(span(0, 10), span(10, 20)) == 0.0


def test_iou_zero_length():
    assert intervals.iou(span(3, 3), span(3, 3)) == 1.0
    assert intervals.iou(span(3, 3), span(4, 4)) == 0.0
    assert intervals.iou(span(3, 3), span(0, 10)) == 0.0


def test_iou_properties_on_random_pairs():
    rng = np.random.default_rng(7)
    for _ in range(1000):
        a0, a1, b0, b1 = rng.uniform(0, 100, size=4)
        a = span(min(a0, a1), max(a0, a1))
        b = span(min(b0, b1), max(b0, b1))

        value = intervals.iou(a, b)
        assert 0.0 <= value <= 1.0
        assert value == intervals.iou(b, a)
        assert intervals.iou(a, a) == pytest.approx(1.0)
        if a.end <= b.start or b.end <= a.start:
            assert value == 0.0


def test_iou_never_grows_as_intervals_drift_apart():
    rng = np.random.default_rng(11)
    for _ in range(1000):
        a0, a1, b0, b1 = rng.uniform(0, 100, size=4)
        a = span(min(a0, a1), max(a0, a1))
        b0, b1 = min(b0, b1), max(b0, b1)
        direction = 1.0 if b0 + b1 >= a.start + a.end else -1.0

        previous = intervals.iou(a, span(b0, b1))
        for step in np.sort(rng.uniform(0, 50, size=5)):
            shift = direction * step
            value = intervals.iou(a, span(b0 + shift, b1 + shift))
            assert value <= previous + 1e-12
            previous = value


def test_length():
    assert intervals.length(span(2.5, 10)) == 7.5


def test_clamp_inside_and_overlapping():
    bounds = span(0, 100)
    assert intervals.as_pair(intervals.clamp(span(10, 20), bounds)) == (10, 20)
    assert intervals.as_pair(intervals.clamp(span(90, 120), bounds)) == (90, 100)
    assert intervals.as_pair(intervals.clamp(span(-5, 5), bounds)) == (0, 5)


def test_clamp_disjoint_collapses_to_nearest_bound():
    bounds = span(0, 100)
    assert intervals.as_pair(intervals.clamp(span(120, 130), bounds)) == (100, 100)
    assert intervals.as_pair(intervals.clamp(span(-9, -1), bounds)) == (0, 0)


def test_contains():
    assert intervals.contains(span(0, 100), span(0, 100))
    assert intervals.contains(span(0, 100), span(40, 60))
    assert not intervals.contains(span(0, 100), span(90, 101))
