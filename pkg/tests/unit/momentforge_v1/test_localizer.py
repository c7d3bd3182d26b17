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
from momentforge_v1.ingest import synth
from momentforge_v1.localize import embedding
from momentforge_v1.localize import localizer
from momentforge_v1.localize import windows
from momentforge_v1.services.reformulator import parser
from momentforge_v1.services.reformulator.transports import mock
from momentforge_v1.types import core
from momentforge_v1.types import localize
from momentforge_v1.types import reformulate

DIM = 64
WORDS = ("cup", "kettle", "spoon", "knife", "plate", "bowl", "phone", "towel", "lid")


def prediction(start, end, score, window=0):
    return localize.Prediction(
        interval=core.TemporalInterval(start=start, end=end),
        score=score,
        source_window=window,
    )


def spans(preds):
    return [(p.interval.start, p.interval.end) for p in preds]


@pytest.fixture
def planted():
    """A 40 s clip of 2.5 s steps with one-hot events.

    ``a`` occurs at steps 2 and 10, ``b`` at step 6 and ``c`` at step 0.
    """
    chosen = []
    used = set()
    for word in WORDS:
        bucket, sign = embedding.token_bucket(word, DIM, 0)
        if bucket not in used:
            used.add(bucket)
            chosen.append((word, bucket, sign))
        if len(chosen) == 3:
            break
    ambient = min(set(range(DIM)) - used)

    values = np.zeros((16, DIM))
    values[:, ambient] = 1.0
    for (word, bucket, sign), steps in zip(chosen, ((2, 10), (6,), (0,))):
        for step in steps:
            values[step] = 0.0
            values[step, bucket] = sign

    clip = core.ClipMeta(clip_id="clip", duration=40.0)
    fm = features.from_array("clip", values, 2.5)
    return clip, fm, [word for word, _, _ in chosen]


def sequence(*steps):
    return reformulate.InstructionSequence(
        steps=[
            reformulate.InstructionStep(description=text, relation=relation)
            for text, relation in steps
        ]
    )


def test_nms_drops_overlaps():
    preds = [
        prediction(1.0, 10.0, 0.8),
        prediction(20.0, 30.0, 0.7),
        prediction(0.0, 10.0, 0.9),
    ]

    kept = localizer.nms(preds, 0.5)

    assert spans(kept) == [(0.0, 10.0), (20.0, 30.0)]


def test_nms_suppresses_a_third_overlap_at_point_three():
    preds = [
        prediction(0.0, 10.0, 0.9),
        prediction(5.0, 15.0, 0.8),
        prediction(20.0, 30.0, 0.7),
    ]

    kept = localizer.nms(preds, 0.3)

    assert spans(kept) == [(0.0, 10.0), (20.0, 30.0)]
    assert [p.score for p in kept] == [0.9, 0.7]
    assert len(localizer.nms(preds, 0.34)) == 3


def test_nms_threshold_one_keeps_everything():
    preds = [prediction(0.0, 10.0, 0.9), prediction(1.0, 10.0, 0.8)]

    assert len(localizer.nms(preds, 1.0)) == 2


def test_nms_max_keep():
    preds = [prediction(10.0 * i, 10.0 * i + 5.0, 1.0 - i / 10) for i in range(5)]

    assert spans(localizer.nms(preds, 0.5, max_keep=2)) == [(0.0, 5.0), (10.0, 15.0)]


def test_nms_ties_break_by_start():
    preds = [prediction(20.0, 30.0, 0.5), prediction(0.0, 10.0, 0.5)]

    assert spans(localizer.nms(preds, 0.5)) == [(0.0, 10.0), (20.0, 30.0)]


def test_nms_invalid_threshold():
    with pytest.raises(ValueError):
        localizer.nms([], 1.5)


def test_single_step_finds_earliest_best(planted):
    clip, fm, (a, _, _) = planted

    preds = localizer.localize_single(
        fm, clip, embedding.embed_text(a, DIM), windows.default_window_config(), 3
    )

    assert spans(preds)[0] == (5.0, 7.5)
    assert (25.0, 27.5) in spans(preds)
    assert len(preds) <= 3
    for pred in preds:
        assert localizer.within_clip(pred, clip)
        assert not pred.fallback


def test_nms_applied_to_ranking(planted):
    clip, fm, (a, _, _) = planted

    preds = localizer.localize_single(
        fm, clip, embedding.embed_text(a, DIM), windows.default_window_config(), 5
    )

    for i, first in enumerate(preds):
        for second in preds[i + 1 :]:
            assert intervals.iou(first.interval, second.interval) <= 0.5
    scores = [p.score for p in preds]
    assert scores == sorted(scores, reverse=True)


def test_ranking_is_deterministic(planted):
    clip, fm, (a, b, _) = planted
    q = embedding.embed_text("{} {}".format(a, b), DIM)
    cfg = windows.default_window_config()

    assert localizer.localize_single(fm, clip, q, cfg, 5) == localizer.localize_single(
        fm, clip, q, cfg, 5
    )


def test_stepwise_after(planted):
    clip, fm, (a, b, _) = planted
    steps = sequence((b, reformulate.Relation.NONE), (a, reformulate.Relation.AFTER))

    preds = localizer.localize_stepwise(
        fm, clip, steps, windows.default_window_config(), 1
    )

    assert spans(preds) == [(25.0, 27.5)]
    assert not preds[0].fallback


def test_stepwise_before(planted):
    clip, fm, (a, b, _) = planted
    steps = sequence((b, reformulate.Relation.NONE), (a, reformulate.Relation.BEFORE))

    preds = localizer.localize_stepwise(
        fm, clip, steps, windows.default_window_config(), 5
    )

    assert spans(preds)[0] == (5.0, 7.5)
    # Every returned candidate ends before the anchor at [15, 17.5].
    assert all(end <= 15.0 for _, end in spans(preds))


def test_stepwise_falls_back_when_nothing_satisfies(planted):
    clip, fm, (a, _, c) = planted
    steps = sequence((c, reformulate.Relation.NONE), (a, reformulate.Relation.BEFORE))

    preds = localizer.localize_stepwise(
        fm, clip, steps, windows.default_window_config(), 1
    )

    assert spans(preds) == [(5.0, 7.5)]
    assert preds[0].fallback


def test_one_step_matches_single(planted):
    clip, fm, (a, _, _) = planted
    cfg = windows.default_window_config()

    stepwise = localizer.localize_stepwise(
        fm, clip, sequence((a, reformulate.Relation.NONE)), cfg, 3
    )

    assert stepwise == localizer.localize_single(
        fm, clip, embedding.embed_text(a, DIM), cfg, 3
    )


def test_top_k_must_be_positive(planted):
    clip, fm, (a, _, _) = planted

    with pytest.raises(ValueError):
        localizer.localize_single(
            fm, clip, embedding.embed_text(a, DIM), windows.default_window_config(), 0
        )


def test_dimension_mismatch(planted):
    clip, fm, (a, _, _) = planted

    with pytest.raises(exceptions.DimensionMismatchError):
        localizer.localize_single(
            fm, clip, embedding.embed_text(a, 32), windows.default_window_config(), 1
        )


def test_concatenated_description():
    steps = sequence(
        ("I fried the meat", reformulate.Relation.NONE),
        ("with the cooker", reformulate.Relation.AFTER),
    )

    text = localizer.concatenated_description(steps)
    assert text == "I fried the meat with the cooker"


def _top1_hits(corpus, spec, localize_one, template):
    hits = total = 0
    cfg = windows.default_window_config()
    for entry, fm in zip(corpus.annotations.clips, corpus.features):
        pool = localizer.CandidatePool(fm, entry.clip, cfg)
        for annotation in entry.annotations:
            if annotation.query.template_hint != template:
                continue
            preds = localize_one(fm, entry.clip, annotation.query, cfg, pool)
            total += 1
            if intervals.iou(preds[0].interval, annotation.ground_truth) > 0.5:
                hits += 1
    assert total > 0
    return hits / total


def _single(spec):
    def localize_one(fm, clip, query, cfg, pool):
        q = embedding.embed_text(query.text, spec.dim, spec.embed_seed)
        return localizer.localize_single(fm, clip, q, cfg, 1, pool=pool)

    return localize_one


def test_recovers_planted_moments():
    spec = synth.make_spec()
    corpus = synth.synth_corpus(spec)

    recall = _top1_hits(corpus, spec, _single(spec), core.TemplateId.OBJ_WHERE)

    assert recall == 1.0


def test_recovers_planted_moments_under_noise():
    spec = synth.make_spec(noise_scale=0.1)
    corpus = synth.synth_corpus(spec)

    recall = _top1_hits(corpus, spec, _single(spec), core.TemplateId.OBJ_WHERE)

    assert recall >= 0.9


def test_stepwise_beats_single_step_on_repeated_events():
    spec = synth.make_spec(echo_first_event=True)
    corpus = synth.synth_corpus(spec)

    def steps_of(query):
        return parser.parse_instructions(mock.rewrite(query.text))

    def stepwise(fm, clip, query, cfg, pool):
        return localizer.localize_stepwise(
            fm, clip, steps_of(query), cfg, 1, seed=spec.embed_seed, pool=pool
        )

    def flat(fm, clip, query, cfg, pool):
        text = localizer.concatenated_description(steps_of(query))
        q = embedding.embed_text(text, spec.dim, spec.embed_seed)
        return localizer.localize_single(fm, clip, q, cfg, 1, pool=pool)

    template = core.TemplateId.OBJ_WHERE_BEFORE_AFTER
    stepwise_recall = _top1_hits(corpus, spec, stepwise, template)
    flat_recall = _top1_hits(corpus, spec, flat, template)

    assert stepwise_recall == 1.0
    assert flat_recall <= 0.5
