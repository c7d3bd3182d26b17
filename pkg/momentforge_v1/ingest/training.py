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

"""Training-window selection.

A learned scorer is trained only on the windows that overlap the ground
truth; a window that merely touches it carries no signal.
"""

from typing import Dict, List, Sequence

from momentforge_v1 import intervals
from momentforge_v1.ingest import annotations as annotations_io
from momentforge_v1.localize import windows as windows_lib
from momentforge_v1.types import core
from momentforge_v1.types import ingest
from momentforge_v1.types import localize


def training_window_filter(
    windows: Sequence[core.TemporalInterval], gt: core.TemporalInterval
) -> List[core.TemporalInterval]:
    """Keep the windows whose intersection with ``gt`` has positive length.

    Input order is preserved.
    """
    return [w for w in windows if intervals.intersection_length(w, gt) > 0]


def training_windows(
    annotation_set: ingest.AnnotationSet, cfg: localize.WindowConfig
) -> Dict[str, List[core.TemporalInterval]]:
    """The training windows of every annotated query, keyed by query id."""
    result = {}
    for clip, annotation in annotations_io.iter_annotations(annotation_set):
        result[annotation.query.query_id] = training_window_filter(
            windows_lib.make_windows(clip.duration, cfg), annotation.ground_truth
        )
    return result
