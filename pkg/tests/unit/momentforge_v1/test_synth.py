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
import os

import numpy as np
import pytest

from momentforge_v1 import exceptions
from momentforge_v1.ingest import annotations
from momentforge_v1.ingest import features
from momentforge_v1.ingest import synth
from momentforge_v1.localize import embedding
from momentforge_v1.types import core


def test_defaults_generate_twenty_clips():
    corpus = synth.synth_corpus(synth.make_spec())

    assert len(corpus.annotations.clips) == 20
    assert len(corpus.features) == 20
    for entry, fm in zip(corpus.annotations.clips, corpus.features):
        assert fm.clip_id == entry.clip.clip_id
        assert (fm.num_steps, fm.dim) == (200, 256)
        assert features.covers_duration(fm, entry.clip.duration)


def test_oracle_matches_annotations():
    corpus = synth.synth_corpus(synth.make_spec(num_clips=5))

    index = annotations.query_index(corpus.annotations)
    assert sorted(index) == sorted(corpus.oracle)
    for query_id, (start, end) in corpus.oracle.items():
        _, annotation = index[query_id]
        assert (annotation.ground_truth.start, annotation.ground_truth.end) == (
            start,
            end,
        )
        assert end - start == pytest.approx(2.5)


def test_queries_follow_templates():
    corpus = synth.synth_corpus(synth.make_spec(num_clips=3))

    for entry in corpus.annotations.clips:
        hints = [a.query.template_hint for a in entry.annotations]
        # Two unique events give two single-step queries and one pair query.
        assert hints == [
            core.TemplateId.OBJ_WHERE,
            core.TemplateId.OBJ_WHERE,
            core.TemplateId.OBJ_WHERE_BEFORE_AFTER,
        ]
        pair = entry.annotations[2]
        assert " after the " in pair.query.text
        assert pair.ground_truth == entry.annotations[1].ground_truth


def test_same_seed_same_corpus():
    spec = synth.make_spec(num_clips=4, noise_scale=0.1)

    first, second = synth.synth_corpus(spec), synth.synth_corpus(spec)

    assert first.annotations == second.annotations
    contents = [fm.content for fm in first.features]
    assert contents == [fm.content for fm in second.features]


def test_different_seed_different_corpus():
    first = synth.synth_corpus(synth.make_spec(num_clips=4, seed=1))
    second = synth.synth_corpus(synth.make_spec(num_clips=4, seed=2))

    assert first.oracle != second.oracle


def test_event_steps_point_along_token_direction():
    spec = synth.make_spec(num_clips=1)
    corpus = synth.synth_corpus(spec)

    entry = corpus.annotations.clips[0]
    values = features.to_array(corpus.features[0])
    annotation = entry.annotations[0]
    token = annotation.query.text[len("Where is the ") : -1]
    bucket, sign = embedding.token_bucket(token, spec.dim, spec.embed_seed)
    first_step = int(annotation.ground_truth.start / spec.step_seconds)

    step = values[first_step]
    assert step[bucket] == sign
    assert np.count_nonzero(step) == 1


def test_echo_repeats_first_token():
    corpus = synth.synth_corpus(synth.make_spec(num_clips=2, echo_first_event=True))

    for entry in corpus.annotations.clips:
        texts = [a.query.text for a in entry.annotations]
        # Only the middle event is unique; two pair queries chain the events.
        assert len(texts) == 3
        assert texts[0].startswith("Where is the ") and " after " not in texts[0]
        assert " after the " in texts[1] and " after the " in texts[2]


def test_infeasible_event_count():
    with pytest.raises(exceptions.InfeasibleSpecError):
        synth.synth_corpus(
            synth.make_spec(clip_duration=10.0, event_seconds=2.5, events_per_clip=5)
        )


@pytest.mark.parametrize(
    "overrides",
    [
        {"num_clips": 0},
        {"step_seconds": -1.0},
        {"noise_scale": -0.1},
        {"event_seconds": 0.25, "step_seconds": 0.5},
    ],
)
def test_invalid_spec(overrides):
    with pytest.raises(exceptions.InfeasibleSpecError):
        synth.synth_corpus(synth.make_spec(**overrides))


def test_tiny_dimension_is_infeasible():
    with pytest.raises(exceptions.InfeasibleSpecError):
        synth.synth_corpus(synth.make_spec(dim=4))


def test_write_corpus(tmp_path):
    corpus = synth.synth_corpus(synth.make_spec(num_clips=2))

    synth.write_corpus(corpus, str(tmp_path))

    loaded = annotations.load_annotations(str(tmp_path / "annotations.json"))
    assert loaded == corpus.annotations
    for fm in corpus.features:
        path = features.features_path(str(tmp_path / "features"), fm.clip_id)
        assert os.path.isfile(path)
    oracle = json.loads((tmp_path / "oracle.json").read_text(encoding="utf-8"))
    assert {k: tuple(v) for k, v in oracle.items()} == corpus.oracle
