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

"""Parsing reformulations into instruction steps.

A reformulation such as "find the moment when I fried the meat, next find
the moment after this with the cooker" is split on ", next" / "; next" /
". next" / ", then" / ". then". Each fragment loses its "find the moment
when/where" lead-in; "after this" or "before this" (or "that") in a
fragment relates it to the step before.
"""

import re

from momentforge_v1.types import reformulate

_DELIMITER = re.compile(r"(?:,|;|\.)\s+next\s+|(?:,|\.)\s+then\s+", re.IGNORECASE)
_LEAD_IN = re.compile(r"^find\s+the\s+moment\b\s*", re.IGNORECASE)
_RELATION_LEAD = re.compile(r"^(?:after|before)\s+(?:this|that)\b[\s,]*", re.IGNORECASE)
_WHEN_WHERE = re.compile(r"^(?:when|where)\b\s*", re.IGNORECASE)
_RELATION = re.compile(r"\b(after|before)\s+(?:this|that)\b", re.IGNORECASE)


def _relation_of(fragment: str) -> reformulate.Relation:
    m = _RELATION.search(fragment)
    if m is None:
        return reformulate.Relation.NONE
    if m.group(1).lower() == "after":
        return reformulate.Relation.AFTER
    return reformulate.Relation.BEFORE


def _description_of(fragment: str) -> str:
    text = _LEAD_IN.sub("", fragment, count=1)
    text = _RELATION_LEAD.sub("", text, count=1)
    return _WHEN_WHERE.sub("", text, count=1).strip()


def parse_instructions(reformulated_text: str) -> reformulate.InstructionSequence:
    """Split a reformulation into ordered instruction steps.

    Parenthesized trailers stay inside their step's description. The first
    step never carries a relation. Text with no recoverable step becomes a
    single step holding the whole text, with ``fallback`` set.

    Args:
        reformulated_text (str): The completion text.

    Returns:
        ~.reformulate.InstructionSequence: At least one step.

    Raises:
        ValueError: If the text is empty.
    """
    text = reformulated_text.strip()
    if not text:
        raise ValueError("cannot parse an empty reformulation")

    steps = []
    for raw in _DELIMITER.split(text):
        fragment = raw.strip().rstrip(".").strip()
        description = _description_of(fragment)
        if not description:
            continue
        relation = _relation_of(fragment) if steps else reformulate.Relation.NONE
        steps.append(
            reformulate.InstructionStep(description=description, relation=relation)
        )

    if not steps:
        return reformulate.InstructionSequence(
            steps=[
                reformulate.InstructionStep(
                    description=text, relation=reformulate.Relation.NONE
                )
            ],
            fallback=True,
        )
    return reformulate.InstructionSequence(steps=steps)
