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

"""Seeded synthetic corpora with planted ground truth.

Every clip gets a few short events. Inside an event, feature steps point
along the signed hash direction of the event's token, so the hashed
bag-of-words embedding of a query naming that token is most similar to
exactly the event's span. Outside events, steps point along an ambient
direction that no query word hashes to. Gaussian noise is added to every
entry.
"""

import json
import logging
import math
import os
from typing import Dict, List, NamedTuple, Sequence, Set, Tuple

import numpy as np  # type: ignore

from momentforge_v1 import exceptions
from momentforge_v1.ingest import annotations as annotations_io
from momentforge_v1.ingest import features as features_io
from momentforge_v1.localize import embedding
from momentforge_v1.types import core
from momentforge_v1.types import ingest

_LOGGER = logging.getLogger(__name__)

# Words the mock reformulations of synthetic queries are built from.
FILLER_WORDS = (
    "where",
    "is",
    "the",
    "after",
    "before",
    "find",
    "moment",
    "when",
    "happened",
    "i",
    "last",
    "saw",
    "next",
    "this",
    "that",
    "then",
)

_NOUNS = (
    "cup",
    "knife",
    "plate",
    "bowl",
    "kettle",
    "spoon",
    "phone",
    "keys",
    "wallet",
    "towel",
    "bottle",
    "scissors",
    "lid",
    "pan",
    "sponge",
    "remote",
    "book",
    "glasses",
    "charger",
    "mug",
    "jar",
    "fork",
    "tray",
    "basket",
    "bag",
    "drill",
    "hammer",
    "brush",
    "candle",
    "pillow",
)

DEFAULTS = {
    "seed": 0,
    "num_clips": 20,
    "clip_duration": 100.0,
    "dim": 256,
    "step_seconds": 0.5,
    "events_per_clip": 2,
    "noise_scale": 0.0,
    "event_seconds": 2.5,
    "echo_first_event": False,
    "embed_seed": 0,
}


class SynthCorpus(NamedTuple):
    annotations: ingest.AnnotationSet
    features: List[ingest.FeatureMatrix]
    oracle: Dict[str, Tuple[float, float]]


def make_spec(**overrides) -> ingest.SynthSpec:
    """A :class:`~.ingest.SynthSpec` with defaults for unset fields."""
    values = dict(DEFAULTS)
    values.update({k: v for k, v in overrides.items() if v is not None})
    return ingest.SynthSpec(**values)


def _validate(spec: ingest.SynthSpec) -> None:
    counts = {
        "num_clips": spec.num_clips,
        "dim": spec.dim,
        "events_per_clip": spec.events_per_clip,
    }
    for name, value in counts.items():
        if value < 1:
            raise exceptions.InfeasibleSpecError(
                "{} must be positive, got {}".format(name, value)
            )
    seconds = {
        "clip_duration": spec.clip_duration,
        "step_seconds": spec.step_seconds,
        "event_seconds": spec.event_seconds,
    }
    for name, value in seconds.items():
        if not (math.isfinite(value) and value > 0):
            raise exceptions.InfeasibleSpecError(
                "{} must be positive, got {}".format(name, value)
            )
    if not (math.isfinite(spec.noise_scale) and spec.noise_scale >= 0):
        raise exceptions.InfeasibleSpecError(
            "noise_scale must be non-negative, got {}".format(spec.noise_scale)
        )
    if spec.event_seconds < spec.step_seconds:
        raise exceptions.InfeasibleSpecError(
            "event_seconds {} shorter than one feature step {}".format(
                spec.event_seconds, spec.step_seconds
            )
        )


def _candidate_tokens():
    for noun in _NOUNS:
        yield noun
    suffix = 2
    while True:
        for noun in _NOUNS:
            yield "{}{}".format(noun, suffix)
        suffix += 1


def _token_pool(
    dim: int, seed: int, needed: int
) -> Tuple[int, List[Tuple[str, int, int]]]:
    """Pick the ambient bucket and tokens with pairwise distinct free buckets."""
    reserved: Set[int] = {embedding.token_bucket(w, dim, seed)[0] for w in FILLER_WORDS}
    free = [b for b in range(dim) if b not in reserved]
    if len(free) < needed + 1:
        raise exceptions.InfeasibleSpecError(
            "dim {} leaves {} free hash buckets; {} events need {}".format(
                dim, len(free), needed, needed + 1
            )
        )
    ambient = free[0]
    reserved.add(ambient)

    pool = []
    attempts = 0
    for token in _candidate_tokens():
        if len(pool) == len(free) - 1 or attempts >= 64 * dim:
            break
        attempts += 1
        bucket, sign = embedding.token_bucket(token, dim, seed)
        if bucket in reserved:
            continue
        reserved.add(bucket)
        pool.append((token, bucket, sign))

    if len(pool) < needed:
        raise exceptions.InfeasibleSpecError(
            "found only {} event tokens with distinct buckets; need {}".format(
                len(pool), needed
            )
        )
    return ambient, pool


def _plant(
    spec: ingest.SynthSpec,
    rng: np.random.Generator,
    events: Sequence[Tuple[float, float, int, int]],
    ambient: int,
) -> np.ndarray:
    num_steps = max(1, int(math.ceil(spec.clip_duration / spec.step_seconds - 1e-9)))
    values = np.zeros((num_steps, spec.dim), dtype=np.float64)
    values[:, ambient] = 1.0
    centers = (np.arange(num_steps) + 0.5) * spec.step_seconds
    for start, end, bucket, sign in events:
        inside = (centers >= start) & (centers < end)
        values[inside] = 0.0
        values[inside, bucket] = sign
    if spec.noise_scale > 0:
        values += rng.normal(0.0, spec.noise_scale, size=values.shape)
    return values


def synth_corpus(spec: ingest.SynthSpec) -> SynthCorpus:
    """Generate a corpus with planted moments.

    Each clip gets ``events_per_clip`` non-overlapping events on a grid of
    ``event_seconds``; with ``echo_first_event`` one more event re-using
    the first event's token is placed last. Queries:

    * ``Where is the <tok>?`` for every event whose token is unique in
      the clip;
    * ``Where is the <B> after the <A>?`` for every pair of adjacent
      events, answered by event B.

    Args:
        spec (~.ingest.SynthSpec): The corpus parameters.

    Returns:
        SynthCorpus: Annotations, one feature matrix per clip, and the
        planted interval of every query.

    Raises:
        ~.exceptions.InfeasibleSpecError: If the parameters cannot be
            realized.
    """
    _validate(spec)
    num_events = spec.events_per_clip + (1 if spec.echo_first_event else 0)
    num_slots = int(math.floor(spec.clip_duration / spec.event_seconds + 1e-9))
    if num_events > num_slots:
        raise exceptions.InfeasibleSpecError(
            "{} events of {}s do not fit in a {}s clip".format(
                num_events, spec.event_seconds, spec.clip_duration
            )
        )
    ambient, pool = _token_pool(spec.dim, spec.embed_seed, spec.events_per_clip)

    rng = np.random.default_rng(spec.seed)
    clips = []
    matrices = []
    oracle: Dict[str, Tuple[float, float]] = {}
    for clip_index in range(spec.num_clips):
        clip = core.ClipMeta(
            clip_id="synth_{:04d}".format(clip_index), duration=spec.clip_duration
        )
        slots = np.sort(rng.choice(num_slots, size=num_events, replace=False))
        picks = rng.choice(len(pool), size=spec.events_per_clip, replace=False)
        tokens = [pool[int(p)] for p in picks]
        if spec.echo_first_event:
            tokens.append(tokens[0])

        events = []
        for slot, (token, bucket, sign) in zip(slots, tokens):
            start = float(slot) * spec.event_seconds
            events.append((start, start + spec.event_seconds, token, bucket, sign))

        values = _plant(
            spec, rng, [(s, e, b, sg) for s, e, _, b, sg in events], ambient
        )
        matrices.append(features_io.from_array(clip.clip_id, values, spec.step_seconds))

        queries: List[Tuple[str, core.TemplateId, float, float]] = []
        token_counts: Dict[str, int] = {}
        for event in events:
            token_counts[event[2]] = token_counts.get(event[2], 0) + 1
        for start, end, token, _, _ in events:
            if token_counts[token] == 1:
                queries.append(
                    (
                        "Where is the {}?".format(token),
                        core.TemplateId.OBJ_WHERE,
                        start,
                        end,
                    )
                )
        for first, second in zip(events, events[1:]):
            queries.append(
                (
                    "Where is the {} after the {}?".format(second[2], first[2]),
                    core.TemplateId.OBJ_WHERE_BEFORE_AFTER,
                    second[0],
                    second[1],
                )
            )

        annotations = []
        for number, (text, template, start, end) in enumerate(queries):
            query_id = "{}_q{:02d}".format(clip.clip_id, number)
            annotations.append(
                core.Annotation(
                    query=core.Query(
                        query_id=query_id, text=text, template_hint=template
                    ),
                    ground_truth=core.TemporalInterval(start=start, end=end),
                )
            )
            oracle[query_id] = (start, end)
        clips.append(ingest.ClipAnnotations(clip=clip, annotations=annotations))

    _LOGGER.info(
        "ingest.synth.generated",
        extra={"clips": spec.num_clips, "queries": len(oracle), "seed": spec.seed},
    )
    return SynthCorpus(ingest.AnnotationSet(clips=clips), matrices, oracle)


def write_corpus(corpus: SynthCorpus, out_dir: str) -> None:
    """Write ``annotations.json``, ``features/<clip_id>.mlf`` and ``oracle.json``.

    Raises:
        ~.exceptions.OutputWriteError: If ``out_dir`` cannot be written.
    """
    features_dir = os.path.join(out_dir, "features")
    oracle = {qid: list(span) for qid, span in sorted(corpus.oracle.items())}
    try:
        os.makedirs(features_dir, exist_ok=True)
        annotations_io.save_annotations(
            corpus.annotations, os.path.join(out_dir, "annotations.json")
        )
        for fm in corpus.features:
            features_io.save_features(
                fm, features_io.features_path(features_dir, fm.clip_id)
            )
        with open(os.path.join(out_dir, "oracle.json"), "w", encoding="utf-8") as fh:
            json.dump(oracle, fh, indent=2)
            fh.write("\n")
    except OSError as exc:
        raise exceptions.OutputWriteError(out_dir, exc) from exc
