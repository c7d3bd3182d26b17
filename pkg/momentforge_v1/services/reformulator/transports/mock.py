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

"""An offline, deterministic stand-in for the chat endpoint.

The mock recovers the user query from the prompt, matches it against the
query templates and fills a fixed instruction frame per template. The two
worked examples of the prompt are answered with their exact outputs.
"""

import re
from typing import Any, Callable, Dict, Optional, Sequence, Tuple, Union

from google.auth import credentials as ga_credentials  # type: ignore

from momentforge_v1.services.reformulator import prompts
from momentforge_v1.types import core
from momentforge_v1.types import reformulate

from .base import ChatTransport

_GOLDEN = {query: output for query, output in prompts.EXAMPLES}

_IRREGULAR_PAST = {
    "be": "was",
    "break": "broke",
    "bring": "brought",
    "buy": "bought",
    "cut": "cut",
    "do": "did",
    "drink": "drank",
    "eat": "ate",
    "find": "found",
    "get": "got",
    "give": "gave",
    "go": "went",
    "hang": "hung",
    "have": "had",
    "hold": "held",
    "keep": "kept",
    "leave": "left",
    "make": "made",
    "put": "put",
    "read": "read",
    "see": "saw",
    "set": "set",
    "shut": "shut",
    "sit": "sat",
    "take": "took",
    "throw": "threw",
    "wear": "wore",
    "write": "wrote",
}

# Short verbs whose final consonant doubles.
_DOUBLING = {
    "chop",
    "dip",
    "drop",
    "grab",
    "mop",
    "pat",
    "plug",
    "rub",
    "scrub",
    "slip",
    "stir",
    "wrap",
}

_DETERMINER = re.compile(r"\b(?:the|my|a|an|some)\b", re.IGNORECASE)


def past_tense(verb: str) -> str:
    low = verb.lower()
    if low in _IRREGULAR_PAST:
        return _IRREGULAR_PAST[low]
    if low in _DOUBLING:
        return low + low[-1] + "ed"
    if low.endswith("e"):
        return low + "d"
    if len(low) > 1 and low.endswith("y") and low[-2] not in "aeiou":
        return low[:-1] + "ied"
    return low + "ed"


def _object_of(phrase: str) -> str:
    """The noun phrase starting at the last determiner of ``phrase``."""
    matches = list(_DETERMINER.finditer(phrase))
    return phrase[matches[-1].start() :] if matches else phrase


def _event_clause(event: str) -> str:
    if re.match(r"i\b", event, re.IGNORECASE):
        return "I" + event[1:]
    if _DETERMINER.match(event):
        return "{} happened".format(event)
    return "I was {}".format(event)


def _where_before_after(m) -> str:
    return (
        "find the moment when {}, next find the moment {} this "
        "where I last saw {}.".format(_event_clause(m["y"]), m["rel"].lower(), m["x"])
    )


def _object_state(m) -> str:
    asked_did = m["lead"].lower() == "did i"
    if m["rel"]:
        first = "find the moment when {}, next find the moment {} this".format(
            _event_clause(m["b"]), m["rel"].lower()
        )
        if asked_did:
            return "{} with {} (I may {}).".format(first, _object_of(m["a2"]), m["a2"])
        return "{} where I last saw {}.".format(first, m["a2"])
    if asked_did:
        return "find the moment when I may {}.".format(m["a1"])
    return "find the moment when I last saw {}.".format(m["a1"])


def _what_did_i(m) -> str:
    thing = "the {}".format(m["x"]) if m["x"] else "something"
    rest = " {}".format(m["rest"]) if m["rest"] else ""
    return "find the moment when I {} {}{}.".format(past_tense(m["verb"]), thing, rest)


def _quantity(m) -> str:
    if m["verb"]:
        rest = " {}".format(m["rest"]) if m["rest"] else ""
        return "find the moment when I {} the {}{} (count the {}).".format(
            past_tense(m["verb"]), m["x"], rest, m["x"]
        )
    rest = " {}".format(m["tail"]) if m["tail"] else ""
    return "find the moment when I saw the {}{} (count the {}).".format(
        m["x"], rest, m["x"]
    )


# Sentence frames per template, applied to the query without its final "?".
# A frame is a format string over the named groups or a function of the match.
_FRAMES: Dict[core.TemplateId, Tuple[Any, Union[str, Callable[[Any], str]]]] = {
    core.TemplateId.OBJ_WHERE_BEFORE_AFTER: (
        re.compile(
            r"^where (?:is|are|was|were) (?P<x>.+?) "
            r"(?P<rel>before|after) (?P<y>.+)$",
            re.I,
        ),
        _where_before_after,
    ),
    core.TemplateId.OBJ_WHERE: (
        re.compile(r"^where (?:is|are|was|were) (?P<x>.+)$", re.I),
        "find the moment when I last saw {x}.",
    ),
    core.TemplateId.PUT_IN_X: (
        re.compile(r"^what did i put (?:in|into|on) (?P<x>.+)$", re.I),
        "find the moment when I put something in {x}.",
    ),
    core.TemplateId.QUANTITY: (
        re.compile(
            r"^how many (?P<x>\S+)"
            r"(?: did i (?P<verb>\w+)(?: (?P<rest>.+))?| (?P<tail>.+))?$",
            re.I,
        ),
        _quantity,
    ),
    core.TemplateId.WHAT_X_DID_I_Y: (
        re.compile(
            r"^what (?:(?P<x>.+?) )?did i (?P<verb>\w+)(?: (?P<rest>.+))?$", re.I
        ),
        _what_did_i,
    ),
    core.TemplateId.LOCATION_SEEN: (
        re.compile(r"^in (?:what|which) location did i see (?P<x>.+)$", re.I),
        "find the moment when I saw {x} (note where I was).",
    ),
    core.TemplateId.WHAT_X_IS_Y: (
        re.compile(r"^what (?P<x>.+?) (?:is|are|was|were) (?P<y>.+)$", re.I),
        "find the moment when I saw {y} (check its {x}).",
    ),
    core.TemplateId.OBJECT_STATE: (
        re.compile(
            r"^(?P<lead>did i|is|are|was|were) "
            r"(?:(?P<a2>.+?) (?P<rel>after|before) (?P<b>.+)|(?P<a1>.+))$",
            re.I,
        ),
        _object_state,
    ),
    core.TemplateId.WHERE_IS_MY_X: (
        re.compile(r"^where (?:is|are|was|were) my (?P<x>.+)$", re.I),
        "find the moment when I last saw my {x}.",
    ),
    core.TemplateId.WHERE_DID_I_PUT_X: (
        re.compile(r"^where did i put (?P<x>.+)$", re.I),
        "find the moment when I put {x} somewhere.",
    ),
    core.TemplateId.INTERACT_DURING_X: (
        re.compile(r"^who did i interact with (?:when|while) (?P<x>.+)$", re.I),
        "find the moment when {x} (look at who I interacted with).",
    ),
    core.TemplateId.TALK_TO_IN_X: (
        re.compile(r"^who did i talk to in (?P<x>.+)$", re.I),
        "find the moment when I was in {x}, "
        "next find the moment after this where I talked to someone.",
    ),
    core.TemplateId.INTERACT_WITH_ROLE_X: (
        re.compile(r"^when did i interact with (?P<x>.+)$", re.I),
        "find the moment when I interacted with {x}.",
    ),
}


def rewrite(query_text: str) -> str:
    """Reformulate a query the way the mock endpoint does."""
    text = " ".join(query_text.split())
    if text in _GOLDEN:
        return _GOLDEN[text]
    body = text.rstrip("?").rstrip()

    template = prompts.match_template(text)
    if template is not None:
        pattern, frame = _FRAMES[template]
        m = pattern.match(body)
        if m:
            if callable(frame):
                return frame(m)
            return frame.format(**m.groupdict())
    return "find the moment when {}.".format(body)


def mock_complete(prompt: Union[reformulate.PromptText, str]) -> str:
    """Answer a reformulation prompt offline.

    Args:
        prompt (Union[~.reformulate.PromptText, str]): A prompt built by
            :func:`~.prompts.build_prompt`.

    Returns:
        str: The reformulation; deterministic in the query text.
    """
    text = prompt if isinstance(prompt, str) else prompt.text
    return rewrite(prompts.extract_query(text))


class MockChatTransport(ChatTransport):
    """Chat transport answering with :func:`mock_complete`; never touches
    the network. A configured endpoint is ignored."""

    SOURCE = reformulate.CompletionSource.MOCK

    HOST = "mock://offline"

    def __init__(
        self,
        *,
        host: Optional[str] = None,
        credentials: ga_credentials.Credentials = None,
        **kwargs,
    ) -> None:
        super().__init__(
            host=self.HOST,
            credentials=credentials or ga_credentials.AnonymousCredentials(),
        )

    def chat_completion(
        self,
        request: reformulate.ChatCompletionRequest,
        *,
        timeout: Optional[float] = None,
        metadata: Sequence[Tuple[str, str]] = (),
    ) -> reformulate.ChatCompletionResponse:
        prompt = request.messages[-1].content if request.messages else ""
        return reformulate.ChatCompletionResponse(
            choices=[
                reformulate.ChatChoice(
                    message=reformulate.ChatMessage(
                        role="assistant", content=mock_complete(prompt)
                    )
                )
            ]
        )


__all__ = ("MockChatTransport", "mock_complete", "rewrite")
