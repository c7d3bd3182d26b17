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

"""Chat-completion transport over HTTPS.

Requests are ``POST``-ed as JSON ``{"model", "messages", "temperature"}``;
the completion is read from ``choices[0].message.content``. The bearer
token comes from ``MOMENTFORGE_API_KEY``.
"""

import os
from typing import Any, Optional, Sequence, Tuple

import requests  # type: ignore

from google.api_core import exceptions  # type: ignore
from google.auth import credentials as ga_credentials  # type: ignore
from google.auth.transport.requests import AuthorizedSession  # type: ignore
from google.oauth2 import credentials as oauth2_credentials  # type: ignore

from momentforge_v1.types import reformulate

from .base import ChatTransport

API_URL_ENV = "MOMENTFORGE_API_URL"
API_KEY_ENV = "MOMENTFORGE_API_KEY"


def default_credentials() -> ga_credentials.Credentials:
    """Bearer-token credentials from the environment, or anonymous ones."""
    token = os.getenv(API_KEY_ENV)
    if token:
        return oauth2_credentials.Credentials(token=token)
    return ga_credentials.AnonymousCredentials()


def request_body(request: reformulate.ChatCompletionRequest) -> dict:
    return {
        "model": request.model,
        "messages": [{"role": m.role, "content": m.content} for m in request.messages],
        "temperature": request.temperature,
    }


def parse_response(payload: Any) -> reformulate.ChatCompletionResponse:
    """Decode a chat-completion response body.

    Raises:
        google.api_core.exceptions.BadGateway: If the body does not have
            the expected shape.
    """
    if not isinstance(payload, dict) or not isinstance(
        payload.get("choices", []), list
    ):
        raise exceptions.BadGateway("chat endpoint returned an unexpected body")
    choices = []
    for choice in payload.get("choices", []):
        message = choice.get("message") if isinstance(choice, dict) else None
        if not isinstance(message, dict):
            raise exceptions.BadGateway(
                "chat endpoint returned a choice without a message"
            )
        choices.append(
            reformulate.ChatChoice(
                message=reformulate.ChatMessage(
                    role=message.get("role") or "assistant",
                    content=message.get("content") or "",
                )
            )
        )
    return reformulate.ChatCompletionResponse(choices=choices)


class HttpChatTransport(ChatTransport):
    """HTTPS transport for a chat-completion endpoint.

    Args:
        host (Optional[str]): The endpoint URL. Defaults to
            ``MOMENTFORGE_API_URL``.
        credentials (Optional[google.auth.credentials.Credentials]): Defaults
            to a bearer token from ``MOMENTFORGE_API_KEY``.
        session (Optional[requests.Session]): An authorized session to send
            requests with; built from ``credentials`` when omitted.

    Raises:
        ValueError: If no endpoint is configured.
    """

    SOURCE = reformulate.CompletionSource.LIVE

    def __init__(
        self,
        *,
        host: Optional[str] = None,
        credentials: ga_credentials.Credentials = None,
        session: Optional[requests.Session] = None,
        **kwargs,
    ) -> None:
        host = host or os.getenv(API_URL_ENV)
        if not host:
            raise ValueError(
                "No chat endpoint configured; "
                "set {} or client_options.api_endpoint.".format(API_URL_ENV)
            )
        if credentials is None:
            credentials = default_credentials()
        super().__init__(host=host, credentials=credentials)
        # A static bearer token cannot be refreshed; surface 401s as errors.
        self._session = session or AuthorizedSession(
            credentials, refresh_status_codes=()
        )

    def chat_completion(
        self,
        request: reformulate.ChatCompletionRequest,
        *,
        timeout: Optional[float] = None,
        metadata: Sequence[Tuple[str, str]] = (),
    ) -> reformulate.ChatCompletionResponse:
        headers = {key: value for key, value in (metadata or ())}
        try:
            response = self._session.post(
                self._host, json=request_body(request), headers=headers, timeout=timeout
            )
        except (
            requests.exceptions.ConnectionError,
            requests.exceptions.Timeout,
        ) as exc:
            raise exceptions.ServiceUnavailable(
                "chat endpoint unreachable: {}".format(exc)
            ) from exc

        if response.status_code >= 400:
            raise exceptions.from_http_response(response)
        try:
            payload = response.json()
        except ValueError as exc:
            raise exceptions.BadGateway("chat endpoint returned invalid JSON") from exc
        return parse_response(payload)


__all__ = ("HttpChatTransport", "default_credentials")
