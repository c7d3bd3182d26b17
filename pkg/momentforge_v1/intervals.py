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

"""Temporal interval arithmetic."""

import math

from momentforge_v1.types import core


def interval(start: float, end: float) -> core.TemporalInterval:
    """Build a :class:`~.core.TemporalInterval`, checking its invariants.

    Raises:
        ValueError: If either bound is not finite or ``start > end``.
    """
    if not (math.isfinite(start) and math.isfinite(end)):
        raise ValueError("interval bounds must be finite: [{}, {}]".format(start, end))
    if start > end:
        raise ValueError("interval start after end: [{}, {}]".format(start, end))
    return core.TemporalInterval(start=start, end=end)


def length(a: core.TemporalInterval) -> float:
    return a.end - a.start


def intersection_length(a: core.TemporalInterval, b: core.TemporalInterval) -> float:
    """Length of ``a ∩ b``; zero when they are disjoint or only touch."""
    return max(0.0, min(a.end, b.end) - max(a.start, b.start))


def iou(a: core.TemporalInterval, b: core.TemporalInterval) -> float:
    """Temporal intersection over union of two intervals.

    The union length is ``len(a) + len(b) - len(a ∩ b)``. Two identical
    zero-length intervals have IoU 1; any other pair with a zero-length
    union has IoU 0.

    Args:
        a (~.core.TemporalInterval): First interval.
        b (~.core.TemporalInterval): Second interval.

    Returns:
        float: A value in ``[0, 1]``.
    """
    inter = intersection_length(a, b)
    union = length(a) + length(b) - inter
    if union <= 0.0:
        return 1.0 if (a.start == b.start and a.end == b.end) else 0.0
    return inter / union


def clamp(
    a: core.TemporalInterval, bounds: core.TemporalInterval
) -> core.TemporalInterval:
    """Intersect ``a`` with ``bounds``.

    A disjoint ``a`` collapses to the zero-length interval at the nearest
    bound.
    """
    if a.end < bounds.start:
        return core.TemporalInterval(start=bounds.start, end=bounds.start)
    if a.start > bounds.end:
        return core.TemporalInterval(start=bounds.end, end=bounds.end)
    return core.TemporalInterval(
        start=max(a.start, bounds.start), end=min(a.end, bounds.end)
    )


def contains(outer: core.TemporalInterval, inner: core.TemporalInterval) -> bool:
    return outer.start <= inner.start and inner.end <= outer.end


def as_pair(a: core.TemporalInterval):
    return (a.start, a.end)
