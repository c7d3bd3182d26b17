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

import mock
import pytest

from google.api_core import exceptions as core_exceptions
from google.auth import credentials as ga_credentials

from momentforge_v1 import exceptions
from momentforge_v1.services.reformulator import ReformulatorClient
from momentforge_v1.services.reformulator import cache as cache_lib
from momentforge_v1.services.reformulator import client as client_lib
from momentforge_v1.services.reformulator import prompts
from momentforge_v1.services.reformulator.transports import ChatTransport
from momentforge_v1.services.reformulator.transports import HttpChatTransport
from momentforge_v1.services.reformulator.transports import MockChatTransport
from momentforge_v1.services.reformulator.transports import rest
from momentforge_v1.types import core
from momentforge_v1.types import reformulate

URL = "https://chat.example.com/v1/chat/completions"


class ScriptedTransport(ChatTransport):
    """Raises the given errors in turn, then answers with ``content``."""

    SOURCE = reformulate.CompletionSource.LIVE

    def __init__(self, errors=(), content="find the moment when I cooked."):
        super().__init__(host="scripted://")
        self.errors = list(errors)
        self.content = content
        self.calls = 0

    def chat_completion(self, request, *, timeout=None, metadata=()):
        self.calls += 1
        if self.errors:
            raise self.errors.pop(0)
        return reformulate.ChatCompletionResponse(
            choices=[
                reformulate.ChatChoice(
                    message=reformulate.ChatMessage(
                        role="assistant", content=self.content
                    )
                )
            ]
        )


@pytest.fixture(autouse=True)
def no_endpoint(monkeypatch):
    monkeypatch.delenv(rest.API_URL_ENV, raising=False)
    monkeypatch.delenv(rest.API_KEY_ENV, raising=False)


def query(text="Where is the cup?"):
    return core.Query(query_id="q1", text=text)


def http_response(status, payload):
    response = mock.Mock()
    response.status_code = status
    response.json.return_value = payload
    response.request.method = "POST"
    response.request.url = URL
    return response


def test_get_transport_class():
    assert ReformulatorClient.get_transport_class() == MockChatTransport
    assert ReformulatorClient.get_transport_class("mock") == MockChatTransport
    assert ReformulatorClient.get_transport_class("live") == HttpChatTransport


def test_defaults_to_mock_without_endpoint():
    client = ReformulatorClient()

    assert isinstance(client.transport, MockChatTransport)
    assert client.source == reformulate.CompletionSource.MOCK


def test_endpoint_selects_live_transport():
    client = ReformulatorClient(client_options={"api_endpoint": URL})

    assert isinstance(client.transport, HttpChatTransport)
    assert client.transport.host == URL
    assert client.source == reformulate.CompletionSource.LIVE


def test_endpoint_from_environment(monkeypatch):
    monkeypatch.setenv(rest.API_URL_ENV, URL)

    assert isinstance(ReformulatorClient().transport, HttpChatTransport)


def test_live_transport_requires_endpoint():
    with pytest.raises(ValueError):
        ReformulatorClient(transport="live")


def test_transport_instance_and_credentials():
    with pytest.raises(ValueError):
        ReformulatorClient(
            credentials=ga_credentials.AnonymousCredentials(),
            transport=MockChatTransport(),
        )


def test_request_and_flattened_prompt():
    client = ReformulatorClient(transport="mock")
    prompt = prompts.build_prompt(query())

    with pytest.raises(ValueError):
        client.chat_completion(reformulate.ChatCompletionRequest(), prompt=prompt)


def test_complete_with_mock():
    client = ReformulatorClient(transport="mock")

    text = client.complete(prompts.build_prompt(query()))

    assert text == "find the moment when I last saw the cup."


def test_http_transport_posts_chat_body():
    session = mock.Mock()
    session.post.return_value = http_response(
        200, {"choices": [{"message": {"role": "assistant", "content": "find it."}}]}
    )
    transport = HttpChatTransport(
        host=URL, credentials=ga_credentials.AnonymousCredentials(), session=session
    )
    client = ReformulatorClient(transport=transport)
    prompt = prompts.build_prompt(query(), "gpt-3.5-turbo", 0.0)

    assert client.complete(prompt) == "find it."

    args, kwargs = session.post.call_args
    assert args == (URL,)
    assert kwargs["json"] == {
        "model": "gpt-3.5-turbo",
        "messages": [{"role": "user", "content": prompt.text}],
        "temperature": 0.0,
    }
    assert kwargs["timeout"] == 60.0


def test_http_error_is_not_retried():
    session = mock.Mock()
    session.post.return_value = http_response(401, {"error": {"message": "bad key"}})
    transport = HttpChatTransport(
        host=URL, credentials=ga_credentials.AnonymousCredentials(), session=session
    )
    client = ReformulatorClient(transport=transport)

    with pytest.raises(core_exceptions.Unauthorized):
        client.complete(prompts.build_prompt(query()))
    assert session.post.call_count == 1


def test_http_connection_error_is_unavailable():
    session = mock.Mock()
    session.post.side_effect = rest.requests.exceptions.ConnectionError("refused")
    transport = HttpChatTransport(
        host=URL, credentials=ga_credentials.AnonymousCredentials(), session=session
    )
    request = reformulate.ChatCompletionRequest(model="m")

    with pytest.raises(core_exceptions.ServiceUnavailable):
        transport.chat_completion(request)


@pytest.mark.parametrize(
    "payload",
    [[], {"choices": "none"}, {"choices": [{"text": "no message"}]}],
)
def test_unexpected_body(payload):
    with pytest.raises(core_exceptions.BadGateway):
        rest.parse_response(payload)


def test_bearer_token_from_environment(monkeypatch):
    monkeypatch.setenv(rest.API_KEY_ENV, "sk-test")

    creds = rest.default_credentials()

    assert creds.token == "sk-test"


@mock.patch("time.sleep")
def test_transient_errors_are_retried(sleep):
    transport = ScriptedTransport(
        errors=[
            core_exceptions.ServiceUnavailable("busy"),
            core_exceptions.TooManyRequests("slow down"),
        ]
    )
    client = ReformulatorClient(transport=transport)

    text = client.complete(prompts.build_prompt(query()))

    assert text == "find the moment when I cooked."
    assert transport.calls == 3
    assert sleep.call_count == 2


@mock.patch("time.sleep")
def test_gives_up_after_three_attempts(sleep):
    transport = ScriptedTransport(
        errors=[core_exceptions.ServiceUnavailable("busy") for _ in range(5)]
    )
    client = ReformulatorClient(transport=transport)

    with pytest.raises(core_exceptions.RetryError):
        client.complete(prompts.build_prompt(query()))
    assert transport.calls == client_lib.MAX_ATTEMPTS


@mock.patch("time.sleep")
def test_each_call_gets_its_own_budget(sleep):
    transport = ScriptedTransport(
        errors=[core_exceptions.ServiceUnavailable("busy") for _ in range(4)]
    )
    client = ReformulatorClient(transport=transport)
    prompt = prompts.build_prompt(query())

    with pytest.raises(core_exceptions.RetryError):
        client.complete(prompt)
    assert client.complete(prompt) == "find the moment when I cooked."
    assert transport.calls == 5


def test_empty_completion():
    client = ReformulatorClient(transport=ScriptedTransport(content="  "))

    with pytest.raises(exceptions.EmptyCompletionError):
        client.complete(prompts.build_prompt(query()))


def test_reformulate_without_cache():
    result = client_lib.reformulate(query(), ReformulatorClient(transport="mock"))

    assert result.query_id == "q1"
    assert result.original_text == "Where is the cup?"
    assert result.reformulated_text == "find the moment when I last saw the cup."
    assert result.source == reformulate.CompletionSource.MOCK


def test_reformulate_uses_cache(tmp_path):
    store = cache_lib.CompletionCache(str(tmp_path))

    first = client_lib.reformulate(query(), ReformulatorClient(transport="mock"), store)
    # Any call to this transport would fail.
    broken = ScriptedTransport(errors=[core_exceptions.BadRequest("unused")])
    broken_client = ReformulatorClient(transport=broken)
    second = client_lib.reformulate(query(), broken_client, store)

    assert first.source == reformulate.CompletionSource.MOCK
    assert second.source == reformulate.CompletionSource.CACHE
    assert second.reformulated_text == first.reformulated_text
    assert broken.calls == 0
    assert len(store) == 1


def test_cache_is_keyed_by_model(tmp_path):
    store = cache_lib.CompletionCache(str(tmp_path))
    client = ReformulatorClient(transport="mock")

    client_lib.reformulate(query(), client, store, model_hint="a")
    other = client_lib.reformulate(query(), client, store, model_hint="b")

    assert other.source == reformulate.CompletionSource.MOCK
    assert len(store) == 2


def test_empty_completion_is_not_cached(tmp_path):
    store = cache_lib.CompletionCache(str(tmp_path))
    client = ReformulatorClient(transport=ScriptedTransport(content=""))

    with pytest.raises(exceptions.EmptyCompletionError):
        client_lib.reformulate(query(), client, store)
    assert len(store) == 0
