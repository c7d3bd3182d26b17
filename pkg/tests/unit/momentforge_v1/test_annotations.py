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

import json

import pytest

from momentforge_v1 import exceptions
from momentforge_v1.ingest import annotations
from momentforge_v1.types import core


def document(**clip_overrides):
    clip = {
        "clip_id": "clip_a",
        "duration_s": 100,
        "queries": [
            {
                "query_id": "q1",
                "text": "Where is the cup?",
                "template": "OBJ_WHERE",
                "start_s": 10,
                "end_s": 20,
            },
            {
                "query_id": "q2",
                "text": "What did I put in the drawer?",
                "template": None,
                "start_s": 55,
                "end_s": 60,
            },
        ],
    }
    clip.update(clip_overrides)
    return {"clips": [clip]}


def write(tmp_path, payload, name="annotations.json"):
    path = tmp_path / name
    path.write_text(
        payload if isinstance(payload, str) else json.dumps(payload), encoding="utf-8"
    )
    return str(path)


def test_load_annotations(tmp_path):
    annotation_set = annotations.load_annotations(write(tmp_path, document()))

    assert len(annotation_set.clips) == 1
    entry = annotation_set.clips[0]
    assert entry.clip.clip_id == "clip_a"
    assert entry.clip.duration == 100
    assert len(entry.annotations) == 2
    first, second = entry.annotations
    assert first.query.template_hint == core.TemplateId.OBJ_WHERE
    assert (first.ground_truth.start, first.ground_truth.end) == (10, 20)
    assert second.query.template_hint == core.TemplateId.TEMPLATE_ID_UNSPECIFIED


def test_moment_outside_clip_names_query(tmp_path):
    payload = document()
    payload["clips"][0]["queries"][1].update(start_s=90, end_s=120)

    with pytest.raises(exceptions.AnnotationFormatError, match="q2"):
        annotations.load_annotations(write(tmp_path, payload))


def test_inverted_moment(tmp_path):
    payload = document()
    payload["clips"][0]["queries"][0].update(start_s=30, end_s=20)

    with pytest.raises(exceptions.AnnotationFormatError, match="q1"):
        annotations.load_annotations(write(tmp_path, payload))


def test_duplicate_clip_id(tmp_path):
    payload = document()
    payload["clips"].append(dict(payload["clips"][0], queries=[]))

    with pytest.raises(exceptions.AnnotationFormatError, match="duplicate clip_id"):
        annotations.load_annotations(write(tmp_path, payload))


def test_duplicate_query_id_across_clips(tmp_path):
    payload = document()
    other = json.loads(json.dumps(payload["clips"][0]))
    other["clip_id"] = "clip_b"
    payload["clips"].append(other)

    with pytest.raises(exceptions.AnnotationFormatError, match="duplicate query_id"):
        annotations.load_annotations(write(tmp_path, payload))


@pytest.mark.parametrize(
    "field,value", [("text", "   "), ("template", "NOT_A_TEMPLATE"), ("start_s", "10")],
)
def test_bad_query_fields(tmp_path, field, value):
    payload = document()
    payload["clips"][0]["queries"][0][field] = value

    with pytest.raises(exceptions.AnnotationFormatError):
        annotations.load_annotations(write(tmp_path, payload))


def test_non_positive_duration(tmp_path):
    with pytest.raises(exceptions.AnnotationFormatError, match="duration_s"):
        annotations.load_annotations(write(tmp_path, document(duration_s=0)))


def test_malformed_json(tmp_path):
    with pytest.raises(exceptions.AnnotationFormatError):
        annotations.load_annotations(write(tmp_path, "{not json"))


def test_missing_file(tmp_path):
    with pytest.raises(exceptions.AnnotationFormatError):
        annotations.load_annotations(str(tmp_path / "missing.json"))


def test_errors_are_validation_errors(tmp_path):
    with pytest.raises(exceptions.ValidationError):
        annotations.load_annotations(write(tmp_path, {"clips": "nope"}))


def test_save_then_load_keeps_content(tmp_path):
    original = annotations.load_annotations(write(tmp_path, document()))
    path = str(tmp_path / "copy.json")

    annotations.save_annotations(original, path)

    assert annotations.load_annotations(path) == original
    saved = json.loads((tmp_path / "copy.json").read_text(encoding="utf-8"))
    assert saved["clips"][0]["queries"][0]["template"] == "OBJ_WHERE"


def test_query_index():
    annotation_set = annotations.annotations_from_dict(document())

    index = annotations.query_index(annotation_set)

    assert sorted(index) == ["q1", "q2"]
    clip, annotation = index["q2"]
    assert clip.clip_id == "clip_a"
    assert annotation.query.text == "What did I put in the drawer?"
