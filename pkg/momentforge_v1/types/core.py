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


__protobuf__ = proto.module(
    package="momentforge.v1",
    manifest={"TemplateId", "TemporalInterval", "ClipMeta", "Query", "Annotation",},
)


class TemplateId(proto.Enum):
    r"""The query templates listed in the reformulation prompt.

    ``TEMPLATE_ID_UNSPECIFIED`` marks a query that follows none of
    them.
    """
    TEMPLATE_ID_UNSPECIFIED = 0
    OBJ_WHERE_BEFORE_AFTER = 1
    OBJ_WHERE = 2
    PUT_IN_X = 3
    QUANTITY = 4
    WHAT_X_DID_I_Y = 5
    LOCATION_SEEN = 6
    WHAT_X_IS_Y = 7
    OBJECT_STATE = 8
    WHERE_IS_MY_X = 9
    WHERE_DID_I_PUT_X = 10
    INTERACT_DURING_X = 11
    TALK_TO_IN_X = 12
    INTERACT_WITH_ROLE_X = 13


class TemporalInterval(proto.Message):
    r"""A closed span of a clip, in seconds.

    Moments, sliding windows and predictions are all expressed as
    intervals in clip coordinates.

    Attributes:
        start (float):
            Start of the span in seconds. Never negative.
        end (float):
            End of the span in seconds. ``start <= end``.
    """

    start = proto.Field(proto.DOUBLE, number=1)

    end = proto.Field(proto.DOUBLE, number=2)


class ClipMeta(proto.Message):
    r"""Metadata of a video clip.

    Attributes:
        clip_id (str):
            Opaque clip identifier. Feature files are named
            ``<clip_id>.mlf``.
        duration (float):
            Clip duration in seconds. Always positive.
    """

    clip_id = proto.Field(proto.STRING, number=1)

    duration = proto.Field(proto.DOUBLE, number=2)


class Query(proto.Message):
    r"""A natural-language moment query.

    Attributes:
        query_id (str):
            Opaque query identifier, unique within an annotation set.
        text (str):
            The query sentence as asked, e.g. "Did I turn off the
            cooker after I fried the meat?".
        template_hint (~.core.TemplateId):
            The template the sentence was written from, when known.
    """

    query_id = proto.Field(proto.STRING, number=1)

    text = proto.Field(proto.STRING, number=2)

    template_hint = proto.Field(proto.ENUM, number=3, enum="TemplateId",)


class Annotation(proto.Message):
    r"""A query paired with its ground-truth moment.

    Attributes:
        query (~.core.Query):
            The annotated query.
        ground_truth (~.core.TemporalInterval):
            The moment that answers the query, inside the clip.
    """

    query = proto.Field(proto.MESSAGE, number=1, message=Query,)

    ground_truth = proto.Field(proto.MESSAGE, number=2, message=TemporalInterval,)


__all__ = tuple(sorted(__protobuf__.manifest))
