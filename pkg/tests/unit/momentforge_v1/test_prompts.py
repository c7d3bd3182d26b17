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

import pytest

from momentforge_v1 import exceptions
from momentforge_v1.services.reformulator import prompts
from momentforge_v1.types import core


def query(text, query_id="q1"):
    return core.Query(query_id=query_id, text=text)


def test_prompt_layout():
    text = prompts.PROMPT_TEMPLATE

    assert text.startswith("You are Eva, a super intelligent assistant")
    assert text.count(prompts.PLACEHOLDER) == 1
    assert text.endswith("Now reformulate this query {USER_INPUT}:")
    lines = [line[2:] for line in text.splitlines() if line.startswith("- ")]
    assert lines[-13:] == list(prompts.TEMPLATE_LINES.values())
    assert len(prompts.TEMPLATE_LINES) == 13


def test_prompt_carries_worked_examples():
    text = prompts.PROMPT_TEMPLATE

    assert (
        "Example 2:\n"
        "query: Did I turn off the cooker after I fried the meat?\n"
        "output: find the moment when I fried the meat, next find the moment after "
        "this with the cooker (I may turn off the cooker).\n"
    ) in text
    assert "query: What did I sprinkle on the cooking pan?\n" in text


def test_build_prompt():
    prompt = prompts.build_prompt(query("Where is the kettle?"), "some-model", 0.7)

    assert prompt.text.endswith("Now reformulate this query Where is the kettle?:")
    assert prompt.model_hint == "some-model"
    assert prompt.temperature == 0.7
    assert prompts.extract_query(prompt.text) == "Where is the kettle?"


def test_query_text_is_not_rescanned():
    prompt = prompts.build_prompt(query("Is {USER_INPUT} here?"))

    assert prompt.text.endswith("this query Is {USER_INPUT} here?:")
    assert prompt.text.count(prompts.PLACEHOLDER) == 1


def test_empty_query_text():
    with pytest.raises(exceptions.ValidationError, match="q7"):
        prompts.build_prompt(query("   ", query_id="q7"))


@pytest.mark.parametrize("temperature", [-0.1, 2.5])
def test_temperature_range(temperature):
    with pytest.raises(exceptions.ValidationError):
        prompts.build_prompt(query("Where is the cup?"), temperature=temperature)


def test_extract_query_without_marker():
    with pytest.raises(ValueError):
        prompts.extract_query("hello")


def test_extract_query_keeps_marker_inside_query():
    text = prompts.QUERY_MARKER + "abc?"
    prompt = prompts.build_prompt(query(text))

    assert prompts.extract_query(prompt.text) == text


@pytest.mark.parametrize(
    "text,expected",
    [
        ("Where is the knife after I cut the bread?", "OBJ_WHERE_BEFORE_AFTER"),
        ("Where is the knife?", "OBJ_WHERE"),
        ("What did I put in the fridge?", "PUT_IN_X"),
        ("How many cups did I wash?", "QUANTITY"),
        ("What did I sprinkle on the cooking pan?", "WHAT_X_DID_I_Y"),
        ("In what location did I see the ladder?", "LOCATION_SEEN"),
        ("What color is the bowl?", "WHAT_X_IS_Y"),
        ("Did I turn off the cooker after I fried the meat?", "OBJECT_STATE"),
        ("Is the door open?", "OBJECT_STATE"),
        ("Where is my phone?", "WHERE_IS_MY_X"),
        ("Where did I put the scissors?", "WHERE_DID_I_PUT_X"),
        ("Who did I interact with when I played cards?", "INTERACT_DURING_X"),
        ("Who did I talk to in the kitchen?", "TALK_TO_IN_X"),
        ("When did I interact with the cashier?", "INTERACT_WITH_ROLE_X"),
    ],
)
def test_match_template(text, expected):
    assert prompts.match_template(text) == core.TemplateId[expected]


def test_unmatched_query():
    assert prompts.match_template("Tell me a joke") is None


@pytest.mark.parametrize(
    "line,expected",
    [
        (
            "Objects: Where is object X before / after event Y?",
            "OBJ_WHERE_BEFORE_AFTER",
        ),
        ("How many X’s? (quantity question)", "QUANTITY"),
        ("In what location did I see object X?", "LOCATION_SEEN"),
        ("  where is my object x?  ", "WHERE_IS_MY_X"),
    ],
)
def test_template_from_line(line, expected):
    assert prompts.template_from_line(line) == core.TemplateId[expected]


@pytest.mark.parametrize("line", ["", "Something else entirely"])
def test_template_from_unknown_line(line):
    assert prompts.template_from_line(line) is None
