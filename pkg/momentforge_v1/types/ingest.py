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
    manifest={"ClipAnnotations", "AnnotationSet", "FeatureMatrix", "SynthSpec",},
)


class ClipAnnotations(proto.Message):
    r"""One clip and the queries annotated on it.

    Attributes:
        clip (~.core.ClipMeta):
            The clip.
        annotations (Sequence[~.core.Annotation]):
            Its annotations, in file order.
    """

    clip = proto.Field(proto.MESSAGE, number=1, message=core.ClipMeta,)

    annotations = proto.RepeatedField(proto.MESSAGE, number=2, message=core.Annotation,)


class AnnotationSet(proto.Message):
    r"""A validated annotation corpus.

    Attributes:
        clips (Sequence[~.ingest.ClipAnnotations]):
            Clips with unique ``clip_id`` values. Every ground truth
            lies inside its clip.
    """

    clips = proto.RepeatedField(proto.MESSAGE, number=1, message=ClipAnnotations,)


class FeatureMatrix(proto.Message):
    r"""Precomputed per-step features of one clip.

    Attributes:
        clip_id (str):
            The clip the features belong to.
        num_steps (int):
            Number of temporal feature steps (T).
        dim (int):
            Feature dimension (D).
        step_seconds (float):
            Seconds covered by one step. Step ``t`` is centered at
            ``(t + 0.5) * step_seconds``.
        content (bytes):
            ``num_steps * dim`` little-endian float32 values in
            step-major order. Use
            :func:`momentforge_v1.ingest.features.to_array` to read them.
    """

    clip_id = proto.Field(proto.STRING, number=1)

    num_steps = proto.Field(proto.UINT32, number=2)

    dim = proto.Field(proto.UINT32, number=3)

    step_seconds = proto.Field(proto.FLOAT, number=4)

    content = proto.Field(proto.BYTES, number=5)


class SynthSpec(proto.Message):
    r"""Parameters of a seeded synthetic corpus.

    Attributes:
        seed (int):
            Seed of the random generator (event placement, tokens,
            noise).
        num_clips (int):
            Number of clips to generate.
        clip_duration (float):
            Duration of every clip in seconds.
        dim (int):
            Feature dimension; must match the embedder's.
        step_seconds (float):
            Seconds per feature step.
        events_per_clip (int):
            Distinct planted events per clip.
        noise_scale (float):
            Standard deviation of the Gaussian noise added to every
            feature entry.
        event_seconds (float):
            Length of each planted event. Events start on multiples
            of this length.
        echo_first_event (bool):
            Append one more event that re-uses the direction of the
            first event, making single-step descriptions ambiguous.
        embed_seed (int):
            Hash seed used to derive planted directions. Must equal
            the seed the localizer embeds queries with.
    """

    seed = proto.Field(proto.INT64, number=1)

    num_clips = proto.Field(proto.INT32, number=2)

    clip_duration = proto.Field(proto.DOUBLE, number=3)

    dim = proto.Field(proto.INT32, number=4)

    step_seconds = proto.Field(proto.DOUBLE, number=5)

    events_per_clip = proto.Field(proto.INT32, number=6)

    noise_scale = proto.Field(proto.DOUBLE, number=7)

    event_seconds = proto.Field(proto.DOUBLE, number=8)

    echo_first_event = proto.Field(proto.BOOL, number=9)

    embed_seed = proto.Field(proto.INT64, number=10)


__all__ = tuple(sorted(__protobuf__.manifest))
