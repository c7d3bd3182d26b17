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

import proto  # type: ignore

from momentforge_v1.types import core


__protobuf__ = proto.module(
    package="momentforge.v1",
    manifest={
        "WindowConfig",
        "CandidateMap",
        "ScoreMap",
        "Prediction",
        "QueryEmbedding",
    },
)


class WindowConfig(proto.Message):
    r"""Sliding-window and candidate-grid parameters.

    Attributes:
        window_seconds (float):
            Window length. Defaults to 40.
        stride_seconds (float):
            Distance between window starts; at most
            ``window_seconds``. Defaults to 20.
        segments_per_window (int):
            Number of equal segments (k) each window is split into
            for the candidate grid. Defaults to 16.
    """

    window_seconds = proto.Field(proto.DOUBLE, number=1)

    stride_seconds = proto.Field(proto.DOUBLE, number=2)

    segments_per_window = proto.Field(proto.INT32, number=3)


class CandidateMap(proto.Message):
    r"""Validity grid of a 2D temporal map.

    Cell ``(i, j)`` is the candidate spanning segments ``i`` through
    ``j``; it is valid iff ``i <= j``.

    Attributes:
        num_segments (int):
            Grid size k.
        valid (Sequence[bool]):
            Row-major ``k * k`` validity flags.
    """

    num_segments = proto.Field(proto.INT32, number=1)

    valid = proto.RepeatedField(proto.BOOL, number=2)


class ScoreMap(proto.Message):
    r"""Scores of the valid cells of a candidate map.

    Attributes:
        candidate_map (~.localize.CandidateMap):
            The scored grid.
        scores (Sequence[float]):
            One finite score per valid cell, in row-major order
            (``i`` ascending, then ``j`` ascending from ``i``).
    """

    candidate_map = proto.Field(proto.MESSAGE, number=1, message=CandidateMap,)

    scores = proto.RepeatedField(proto.DOUBLE, number=2)


class Prediction(proto.Message):
    r"""A ranked moment prediction.

    Attributes:
        interval (~.core.TemporalInterval):
            Predicted moment in clip coordinates.
        score (float):
            Ranking score; higher is better.
        source_window (int):
            Index of the sliding window the candidate came from.
        fallback (bool):
            Set by step-wise localization when a relation constraint
            left no candidate and the unconstrained ranking was used.
    """

    interval = proto.Field(proto.MESSAGE, number=1, message=core.TemporalInterval,)

    score = proto.Field(proto.DOUBLE, number=2)

    source_window = proto.Field(proto.INT32, number=3)

    fallback = proto.Field(proto.BOOL, number=4)


class QueryEmbedding(proto.Message):
    r"""A fixed-size query vector.

    Attributes:
        dim (int):
            Vector length.
        values (Sequence[float]):
            The ``dim`` finite components.
    """

    dim = proto.Field(proto.INT32, number=1)

    values = proto.RepeatedField(proto.DOUBLE, number=2)


__all__ = tuple(sorted(__protobuf__.manifest))
