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

from momentforge_v1 import intervals
from momentforge_v1.ingest import annotations
from momentforge_v1.ingest import training
from momentforge_v1.localize import windows


def test_filter_keeps_overlapping_windows():
    spans = windows.make_windows(100.0, windows.default_window_config())

    kept = training.training_window_filter(spans, intervals.interval(45, 50))

    assert [intervals.as_pair(w) for w in kept] == [(20, 60), (40, 80)]


def test_touching_window_is_dropped():
    spans = windows.make_windows(100.0, windows.default_window_config())

    kept = training.training_window_filter(spans, intervals.interval(80, 90))

    assert [intervals.as_pair(w) for w in kept] == [(60, 100)]


def test_training_windows_by_query():
    annotation_set = annotations.annotations_from_dict(
        {
            "clips": [
                {
                    "clip_id": "clip_a",
                    "duration_s": 100,
                    "queries": [
                        {"query_id": "q1", "text": "a", "start_s": 45, "end_s": 50},
                        {"query_id": "q2", "text": "b", "start_s": 0, "end_s": 5},
                    ],
                }
            ]
        }
    )

    selected = training.training_windows(
        annotation_set, windows.default_window_config()
    )

    assert {k: [intervals.as_pair(w) for w in v] for k, v in selected.items()} == {
        "q1": [(20, 60), (40, 80)],
        "q2": [(0, 40)],
    }
