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

from collections import OrderedDict
import logging
import os
import time
from typing import Dict, Optional, Sequence, Tuple, Type, Union

import google.api_core.client_options as ClientOptions  # type: ignore
from google.api_core import exceptions  # type: ignore
from google.api_core import gapic_v1  # type: ignore
from google.api_core import retry as retries  # type: ignore
from google.auth import credentials  # type: ignore

from momentforge_v1 import exceptions as mf_exceptions
from momentforge_v1.services.reformulator import cache as cache_lib
from momentforge_v1.services.reformulator import prompts
from momentforge_v1.types import core
from momentforge_v1.types import reformulate as types

from .transports.base import ChatTransport
from .transports.mock import MockChatTransport
from .transports.rest import API_URL_ENV
from .transports.rest import HttpChatTransport

_LOGGER = logging.getLogger(__name__)

MAX_ATTEMPTS = 3

_RETRYABLE = retries.if_exception_type(
    exceptions.ServiceUnavailable,
    exceptions.TooManyRequests,
    exceptions.InternalServerError,
    exceptions.DeadlineExceeded,
)


class _AttemptBudget:
    """``on_error`` hook that stops a retry after ``max_attempts`` failures."""

    def __init__(self, max_attempts: int):
        self._max_attempts = max_attempts
        self.failures = 0

    def __call__(self, exc: Exception) -> None:
        self.failures += 1
        _LOGGER.warning(
            "reformulate.transport.retry",
            extra={"attempt": self.failures, "error": str(exc)},
        )
        if self.failures >= self._max_attempts:
            raise exceptions.RetryError(
                "chat completion failed after {} attempts".format(self.failures), exc
            )


def default_retry(max_attempts: int = MAX_ATTEMPTS) -> retries.Retry:
    """A fresh retry policy: exponential backoff from 1 s, at most
    ``max_attempts`` attempts."""
    return retries.Retry(
        predicate=_RETRYABLE,
        initial=1.0,
        maximum=8.0,
        multiplier=2.0,
        on_error=_AttemptBudget(max_attempts),
    )


class ReformulatorClientMeta(type):
    """Metaclass for the Reformulator client.

    This provides class-level methods for building and retrieving
    support objects (e.g. transport) without polluting the client instance
    objects.
    """

    _transport_registry = OrderedDict()  # type: Dict[str, Type[ChatTransport]]
    _transport_registry["mock"] = MockChatTransport
    _transport_registry["live"] = HttpChatTransport

    def get_transport_class(cls, label: str = None,) -> Type[ChatTransport]:
        """Return an appropriate transport class.

        Args:
            label: The name of the desired transport. If none is
                provided, then the first transport in the registry is used.

        Returns:
            The transport class to use.
        """
        # If a specific transport is requested, return that one.
        if label:
            return cls._transport_registry[label]

        # No transport is requested; return the default (that is, the first one
        # in the dictionary).
        return next(iter(cls._transport_registry.values()))


class ReformulatorClient(metaclass=ReformulatorClientMeta):
    """Rewrites moment queries into step-wise localization instructions
    with a chat-completion model.

    The live transport posts the reformulation prompt to a chat endpoint;
    the mock transport answers offline and deterministically. Completions
    can be cached on disk, keyed by prompt, model and temperature.
    """

    def __init__(
        self,
        *,
        credentials: credentials.Credentials = None,
        transport: Union[str, ChatTransport] = None,
        client_options: ClientOptions = None,
    ) -> None:
        """Instantiate the reformulator client.

        Args:
            credentials (Optional[google.auth.credentials.Credentials]): The
                authorization credentials to attach to requests. If none
                are specified, a bearer token is read from
                ``MOMENTFORGE_API_KEY``.
            transport (Union[str, ~.ChatTransport]): The transport to use,
                ``"live"`` or ``"mock"``. If set to None, ``"live"`` is used
                when an endpoint is configured and ``"mock"`` otherwise.
            client_options (ClientOptions): Custom options for the client. It
                won't take effect if a ``transport`` instance is provided.
                The ``api_endpoint`` property sets the chat-completion URL
                and defaults to ``MOMENTFORGE_API_URL``.
        """
        if isinstance(client_options, dict):
            client_options = ClientOptions.from_dict(client_options)
        if client_options is None:
            client_options = ClientOptions.ClientOptions()

        if client_options.api_endpoint is None:
            client_options.api_endpoint = os.getenv(API_URL_ENV)

        # Save or instantiate the transport.
        if isinstance(transport, ChatTransport):
            if credentials or client_options.credentials_file:
                raise ValueError(
                    "When providing a transport instance, "
                    "provide its credentials directly."
                )
            self._transport = transport
        else:
            if transport is None:
                transport = "live" if client_options.api_endpoint else "mock"
            Transport = type(self).get_transport_class(transport)
            self._transport = Transport(
                credentials=credentials, host=client_options.api_endpoint,
            )

    @property
    def transport(self) -> ChatTransport:
        return self._transport

    @property
    def source(self) -> types.CompletionSource:
        """Where completions from this client come from."""
        return self._transport.SOURCE

    def chat_completion(
        self,
        request: types.ChatCompletionRequest = None,
        *,
        prompt: types.PromptText = None,
        retry: retries.Retry = gapic_v1.method.DEFAULT,
        timeout: float = None,
        metadata: Sequence[Tuple[str, str]] = (),
    ) -> types.ChatCompletionResponse:
        r"""Requests a chat completion.

        Args:
            request (:class:`~.types.ChatCompletionRequest`):
                The request object.
            prompt (:class:`~.types.PromptText`):
                A rendered prompt, sent as the single user message.
                This corresponds to the ``messages``, ``model`` and
                ``temperature`` fields on the ``request`` instance; if
                ``request`` is provided, this should not be set.

            retry (google.api_core.retry.Retry): Designation of what errors, if any,
                should be retried. Defaults to at most three attempts with
                exponential backoff.
            timeout (float): The timeout for this request.
            metadata (Sequence[Tuple[str, str]]): Strings which should be
                sent along with the request as headers.

        Returns:
            ~.types.ChatCompletionResponse:
                The completion choices.
        """
        # Sanity check: If we got a request object, we should *not* have
        # gotten any keyword arguments that map to the request.
        if request is not None and prompt is not None:
            raise ValueError(
                "If the `request` argument is set, then none of "
                "the individual field arguments should be set."
            )

        if prompt is not None:
            request = types.ChatCompletionRequest(
                model=prompt.model_hint,
                temperature=prompt.temperature,
                messages=[types.ChatMessage(role="user", content=prompt.text)],
            )
        elif not isinstance(request, types.ChatCompletionRequest):
            request = types.ChatCompletionRequest(request)

        # Wrap the method; this adds retry and timeout information.
        rpc = self._transport._wrapped_methods[self._transport.chat_completion]

        if retry is gapic_v1.method.DEFAULT:
            retry = default_retry()
        if timeout is None:
            timeout = gapic_v1.method.DEFAULT

        # Send the request.
        response = rpc(request, retry=retry, timeout=timeout, metadata=metadata,)

        # Done; return the response.
        return response

    def complete(self, prompt: types.PromptText, **kwargs) -> str:
        """The completion text for a prompt.

        Raises:
            ~.exceptions.EmptyCompletionError: If the endpoint returned no
                text.
        """
        response = self.chat_completion(prompt=prompt, **kwargs)
        text = response.choices[0].message.content if response.choices else ""
        if not text.strip():
            raise mf_exceptions.EmptyCompletionError(
                "chat endpoint at {} returned an empty completion".format(
                    self._transport.host
                )
            )
        return text


def reformulate(
    query: core.Query,
    client: ReformulatorClient,
    cache: Optional[cache_lib.CompletionCache] = None,
    *,
    model_hint: str = prompts.DEFAULT_MODEL,
    temperature: float = prompts.DEFAULT_TEMPERATURE,
    **kwargs,
) -> types.ReformulatedQuery:
    """Reformulate one query, consulting the completion cache first.

    Args:
        query (~.core.Query): The query.
        client (ReformulatorClient): The client to ask on a cache miss.
        cache (Optional[~.cache.CompletionCache]): Completion cache.
        model_hint (str): Chat model name.
        temperature (float): Sampling temperature.
        kwargs: Passed to :meth:`ReformulatorClient.complete`.

    Returns:
        ~.types.ReformulatedQuery: The reformulation and where it came from.

    Raises:
        ~.exceptions.EmptyCompletionError: Nothing is cached in this case.
        ~.exceptions.CacheWriteError: If the completion cannot be stored.
        google.api_core.exceptions.GoogleAPIError: On transport failure.
    """
    prompt = prompts.build_prompt(query, model_hint, temperature)
    key = cache_lib.cache_key(prompt)

    if cache is not None:
        entry = cache.get(key)
        if entry is not None:
            _LOGGER.debug(
                "reformulate.cache.hit",
                extra={"query_id": query.query_id, "key": key[:10]},
            )
            return types.ReformulatedQuery(
                query_id=query.query_id,
                original_text=query.text,
                reformulated_text=entry.completion,
                source=types.CompletionSource.CACHE,
            )
        _LOGGER.debug(
            "reformulate.cache.miss",
            extra={"query_id": query.query_id, "key": key[:10]},
        )

    started = time.perf_counter()
    text = client.complete(prompt, **kwargs)
    _LOGGER.info(
        "reformulate.completion",
        extra={
            "query_id": query.query_id,
            "source": types.CompletionSource(client.source).name,
            "ms": round((time.perf_counter() - started) * 1000.0, 2),
        },
    )
    if cache is not None:
        cache.put(key, prompt, text)

    return types.ReformulatedQuery(
        query_id=query.query_id,
        original_text=query.text,
        reformulated_text=text,
        source=client.source,
    )
