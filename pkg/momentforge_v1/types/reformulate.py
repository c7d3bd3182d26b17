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
    manifest={
        "Relation",
        "CompletionSource",
        "PromptText",
        "ReformulatedQuery",
        "InstructionStep",
        "InstructionSequence",
        "ChatMessage",
        "ChatCompletionRequest",
        "ChatChoice",
        "ChatCompletionResponse",
        "CacheEntry",
    },
)


class Relation(proto.Enum):
    r"""Temporal relation of an instruction step to the step before it."""
    NONE = 0
    AFTER = 1
    BEFORE = 2


class CompletionSource(proto.Enum):
    r"""Where a reformulation came from."""
    COMPLETION_SOURCE_UNSPECIFIED = 0
    LIVE = 1
    MOCK = 2
    CACHE = 3


class PromptText(proto.Message):
    r"""A fully rendered reformulation prompt.

    Attributes:
        text (str):
            The prompt with the user query substituted.
        model_hint (str):
            Chat model the prompt is meant for.
        temperature (float):
            Sampling temperature in ``[0, 2]``.
    """

    text = proto.Field(proto.STRING, number=1)

    model_hint = proto.Field(proto.STRING, number=2)

    temperature = proto.Field(proto.DOUBLE, number=3)


class ReformulatedQuery(proto.Message):
    r"""A query and the instructions it was rewritten into.

    Attributes:
        query_id (str):
            Identifier of the original query.
        original_text (str):
            The query as annotated.
        reformulated_text (str):
            The completion returned for it. Never empty.
        source (~.reformulate.CompletionSource):
            Whether the text came from the live endpoint, the mock or
            the completion cache.
    """

    query_id = proto.Field(proto.STRING, number=1)

    original_text = proto.Field(proto.STRING, number=2)

    reformulated_text = proto.Field(proto.STRING, number=3)

    source = proto.Field(proto.ENUM, number=4, enum=CompletionSource,)


class InstructionStep(proto.Message):
    r"""One "find the moment ..." instruction.

    Attributes:
        description (str):
            What to look for, with the instruction prefix removed.
        relation (~.reformulate.Relation):
            How the step's moment relates to the previous step's.
    """

    description = proto.Field(proto.STRING, number=1)

    relation = proto.Field(proto.ENUM, number=2, enum=Relation,)


class InstructionSequence(proto.Message):
    r"""Ordered localization instructions.

    Attributes:
        steps (Sequence[~.reformulate.InstructionStep]):
            At least one step; the first has relation ``NONE``.
        fallback (bool):
            Set when no step could be recovered and the whole text
            was kept as a single step.
    """

    steps = proto.RepeatedField(proto.MESSAGE, number=1, message=InstructionStep,)

    fallback = proto.Field(proto.BOOL, number=2)


class ChatMessage(proto.Message):
    r"""A chat message.

    Attributes:
        role (str):
            "user", "assistant" or "system".
        content (str):
            Message body.
    """

    role = proto.Field(proto.STRING, number=1)

    content = proto.Field(proto.STRING, number=2)


class ChatCompletionRequest(proto.Message):
    r"""Request body of a chat-completion call.

    Attributes:
        model (str):
            Model name.
        messages (Sequence[~.reformulate.ChatMessage]):
            Conversation so far. Reformulation sends one user message.
        temperature (float):
            Sampling temperature.
    """

    model = proto.Field(proto.STRING, number=1)

    messages = proto.RepeatedField(proto.MESSAGE, number=2, message=ChatMessage,)

    temperature = proto.Field(proto.DOUBLE, number=3)


class ChatChoice(proto.Message):
    r"""One completion choice.

    Attributes:
        message (~.reformulate.ChatMessage):
            The generated message.
    """

    message = proto.Field(proto.MESSAGE, number=1, message=ChatMessage,)


class ChatCompletionResponse(proto.Message):
    r"""Response body of a chat-completion call.

    Attributes:
        choices (Sequence[~.reformulate.ChatChoice]):
            Returned choices; only the first is used.
    """

    choices = proto.RepeatedField(proto.MESSAGE, number=1, message=ChatChoice,)


class CacheEntry(proto.Message):
    r"""A cached completion, stored as ``<cache_dir>/<key>.json``.

    Attributes:
        prompt_hash (str):
            SHA-256 hex digest of the prompt text.
        model (str):
            Model hint the completion was requested with.
        temperature (float):
            Temperature the completion was requested with.
        completion (str):
            The completion text.
        created_unix (int):
            Creation time, seconds since the epoch.
    """

    prompt_hash = proto.Field(proto.STRING, number=1)

    model = proto.Field(proto.STRING, number=2)

    temperature = proto.Field(proto.DOUBLE, number=3)

    completion = proto.Field(proto.STRING, number=4)

    created_unix = proto.Field(proto.INT64, number=5)


__all__ = tuple(sorted(__protobuf__.manifest))
