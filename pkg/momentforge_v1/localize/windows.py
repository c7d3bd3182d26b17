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

"""Sliding windows over a clip."""

import math
from typing import List

from momentforge_v1 import exceptions
from momentforge_v1.types import core
from momentforge_v1.types import localize

DEFAULT_WINDOW_SECONDS = 40.0
DEFAULT_STRIDE_SECONDS = 20.0
DEFAULT_SEGMENTS = 16

_EPS = 1e-9


def default_window_config() -> localize.WindowConfig:
    return localize.WindowConfig(
        window_seconds=DEFAULT_WINDOW_SECONDS,
        stride_seconds=DEFAULT_STRIDE_SECONDS,
        segments_per_window=DEFAULT_SEGMENTS,
    )


def validate_window_config(cfg: localize.WindowConfig) -> None:
    """Raise :class:`~.exceptions.ValidationError` on a bad configuration."""
    if not (math.isfinite(cfg.window_seconds) and cfg.window_seconds > 0):
        raise exceptions.ValidationError(
            "window_seconds must be positive, got {}".format(cfg.window_seconds)
        )
    if not (math.isfinite(cfg.stride_seconds) and cfg.stride_seconds > 0):
        raise exceptions.ValidationError(
            "stride_seconds must be positive, got {}".format(cfg.stride_seconds)
        )
    if cfg.stride_seconds > cfg.window_seconds:
        raise exceptions.ValidationError(
            "stride_seconds {} exceeds window_seconds {}".format(
                cfg.stride_seconds, cfg.window_seconds
            )
        )
    if cfg.segments_per_window < 1:
        raise exceptions.ValidationError(
            "segments_per_window must be at least 1, got {}".format(
                cfg.segments_per_window
            )
        )


def make_windows(
    duration: float, cfg: localize.WindowConfig
) -> List[core.TemporalInterval]:
    """Cover ``[0, duration]`` with equal-length overlapping windows.

    Windows start at ``0, stride, 2 * stride, ...``. When the last of
    these ends before ``duration``, a tail window ``[duration - W,
    duration]`` is added. A clip no longer than one window gets the single
    window ``[0, duration]``.

    Args:
        duration (float): Clip duration in seconds.
        cfg (~.localize.WindowConfig): Window length and stride.

    Returns:
        Sequence[~.core.TemporalInterval]: Distinct windows sorted by start.
    """
    if not (math.isfinite(duration) and duration > 0):
        raise exceptions.ValidationError(
            "clip duration must be positive, got {}".format(duration)
        )
    validate_window_config(cfg)
    width, stride = cfg.window_seconds, cfg.stride_seconds
    if duration <= width:
        return [core.TemporalInterval(start=0.0, end=duration)]

    spans = []
    index = 0
    while index * stride + width <= duration + _EPS:
        start = index * stride
        spans.append((start, min(start + width, duration)))
        index += 1
    if spans[-1][1] < duration - _EPS:
        spans.append((duration - width, duration))

    return [core.TemporalInterval(start=s, end=e) for s, e in sorted(set(spans))]
