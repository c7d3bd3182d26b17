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

"""The reformulation prompt and the query templates it lists."""

import re
from typing import Dict, Optional

from momentforge_v1 import exceptions
from momentforge_v1.types import core
from momentforge_v1.types import reformulate

PLACEHOLDER = "{USER_INPUT}"
QUERY_MARKER = "Now reformulate this query "

TEMPLATE_LINES: Dict[core.TemplateId, str] = {
    core.TemplateId.OBJ_WHERE_BEFORE_AFTER: "Where is object X before / after event Y?",
    core.TemplateId.OBJ_WHERE: "Where is object X?",
    core.TemplateId.PUT_IN_X: "What did I put in X?",
    core.TemplateId.QUANTITY: "How many X's? (quantity question)",
    core.TemplateId.WHAT_X_DID_I_Y: "What X did I Y?",
    core.TemplateId.LOCATION_SEEN: "In what location did I see object X ?",
    core.TemplateId.WHAT_X_IS_Y: "What X is Y?",
    core.TemplateId.OBJECT_STATE: "State of an object",
    core.TemplateId.WHERE_IS_MY_X: "Where is my object X?",
    core.TemplateId.WHERE_DID_I_PUT_X: "Where did I put X?",
    core.TemplateId.INTERACT_DURING_X: "Who did I interact with when I did activity X?",
    core.TemplateId.TALK_TO_IN_X: "Who did I talk to in location X?",
    core.TemplateId.INTERACT_WITH_ROLE_X: (
        "When did I interact with person with role X?"
    ),
}

EXAMPLES = (
    (
        "What did I sprinkle on the cooking pan?",
        "find the moment when I sprinkled something on the cooking pan.",
    ),
    (
        "Did I turn off the cooker after I fried the meat?",
        "find the moment when I fried the meat, next find the moment after this "
        "with the cooker (I may turn off the cooker).",
    ),
)

PROMPT_TEMPLATE = (
    "You are Eva, a super intelligent assistant that help users locate moments "
    "in videos via natural language queries.\n"
    "\n"
    "You are:\n"
    "- helpful and friendly\n"
    "- not able to directly access the video's content\n"
    "- decompose a complex event query into a series of logically coherent actions\n"
    "- good at understanding user's intent and extract the core steps from the "
    "query in order to answer the user's question\n"
    "\n"
    "You can use an external tool named Locator, which is able to locate moments "
    "in videos given detailed natural language queries.\n"
    "\n"
    "The user will ask a question about objects, places, and people in an "
    "ego-centric video, and the key to answer the question is to first locate "
    "relevant moments given the query.\n"
    "\n"
    "Your goal is to reformulate the query into a series of instructions for the "
    "Locator.\n"
    "\n"
    "There are some templates for user's query as following:\n"
    + "".join("- {}\n".format(line) for line in TEMPLATE_LINES.values())
    + "\n"
    "Here are some examples:\n"
    + "".join(
        "Example {}:\nquery: {}\noutput: {}\n".format(number, query, output)
        for number, (query, output) in enumerate(EXAMPLES, start=1)
    )
    + "\n"
    + QUERY_MARKER
    + PLACEHOLDER
    + ":"
)

DEFAULT_MODEL = "gpt-3.5-turbo"
DEFAULT_TEMPERATURE = 0.0


def build_prompt(
    query: core.Query,
    model_hint: str = DEFAULT_MODEL,
    temperature: float = DEFAULT_TEMPERATURE,
) -> reformulate.PromptText:
    """Render the reformulation prompt for a query.

    The query text replaces the single ``{USER_INPUT}`` placeholder at the
    end of the prompt; the text itself is never scanned for placeholders.

    Raises:
        ~.exceptions.ValidationError: If the query text is empty or the
            temperature is outside ``[0, 2]``.
    """
    if not query.text.strip():
        raise exceptions.ValidationError(
            "query {!r} has empty text".format(query.query_id)
        )
    if not 0.0 <= temperature <= 2.0:
        raise exceptions.ValidationError(
            "temperature must be in [0, 2], got {}".format(temperature)
        )
    return reformulate.PromptText(
        text=PROMPT_TEMPLATE.replace(PLACEHOLDER, query.text, 1),
        model_hint=model_hint,
        temperature=temperature,
    )


def extract_query(prompt_text: str) -> str:
    """Recover the user query from a rendered prompt.

    The template holds the marker once, right before the query, so the
    first occurrence is the template's own even when the query repeats it.
    """
    _, marker, tail = prompt_text.partition(QUERY_MARKER)
    if not marker:
        raise ValueError("prompt does not contain a query")
    return tail[:-1] if tail.endswith(":") else tail


_T = core.TemplateId

# First match wins.
_KEYWORDS = (
    (re.compile(r"^how many\b"), _T.QUANTITY),
    (re.compile(r"\bwhere did i put\b"), _T.WHERE_DID_I_PUT_X),
    (re.compile(r"\bwho did i talk to\b"), _T.TALK_TO_IN_X),
    (re.compile(r"\bwho did i interact\b"), _T.INTERACT_DURING_X),
    (re.compile(r"\bwhen did i interact\b"), _T.INTERACT_WITH_ROLE_X),
    (re.compile(r"\bin (?:what|which) location\b"), _T.LOCATION_SEEN),
    (re.compile(r"\bwhat did i put\b"), _T.PUT_IN_X),
    (re.compile(r"\bwhere (?:is|are|was|were) my\b"), _T.WHERE_IS_MY_X),
    (
        re.compile(r"\bwhere (?:is|are|was|were)\b.*\b(?:before|after)\b"),
        _T.OBJ_WHERE_BEFORE_AFTER,
    ),
    (re.compile(r"\bwhere (?:is|are|was|were)\b"), _T.OBJ_WHERE),
    (re.compile(r"^did i\b.*\b(?:before|after)\b"), _T.OBJECT_STATE),
    (re.compile(r"^(?:did i|is|are|was|were)\b"), _T.OBJECT_STATE),
    (re.compile(r"^what\b.*\bdid i\b"), _T.WHAT_X_DID_I_Y),
    (re.compile(r"^what\b.*\b(?:is|are|was|were)\b"), _T.WHAT_X_IS_Y),
)


def match_template(query_text: str) -> Optional[core.TemplateId]:
    """The template a query follows, or ``None``.

    >>> match_template("Where did I put the scissors?").name
    'WHERE_DID_I_PUT_X'
    """
    text = " ".join(query_text.lower().split())
    for pattern, template in _KEYWORDS:
        if pattern.search(text):
            return template
    return None


def _normalize_line(line: str) -> str:
    line = line.replace("’", "'").replace("‘", "'")
    line = " ".join(line.split()).lower()
    return line.rstrip(" ?")


_BY_LINE = {
    _normalize_line(line): template for template, line in TEMPLATE_LINES.items()
}


def template_from_line(line: str) -> Optional[core.TemplateId]:
    """Map a template line, optionally prefixed with a category such as
    ``"Objects: "``, to its template."""
    if not line:
        return None
    _, _, body = line.rpartition(": ")
    return _BY_LINE.get(_normalize_line(body))
