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

import abc
import typing
import pkg_resources

from google.api_core import gapic_v1  # type: ignore
from google.auth import credentials  # type: ignore

from momentforge_v1.types import reformulate


try:
    _client_info = gapic_v1.client_info.ClientInfo(
        gapic_version=pkg_resources.get_distribution("momentforge",).version,
    )
except pkg_resources.DistributionNotFound:
    _client_info = gapic_v1.client_info.ClientInfo()

DEFAULT_TIMEOUT = 60.0


class ChatTransport(abc.ABC):
    """Abstract transport class for chat completions."""

    SOURCE = reformulate.CompletionSource.COMPLETION_SOURCE_UNSPECIFIED

    def __init__(
        self,
        *,
        host: typing.Optional[str] = None,
        credentials: credentials.Credentials = None,
        **kwargs,
    ) -> None:
        """Instantiate the transport.

        Args:
            host (Optional[str]): The chat-completion URL.
            credentials (Optional[google.auth.credentials.Credentials]): The
                authorization credentials to attach to requests.
        """
        self._host = host
        self._credentials = credentials

        # Lifted into its own function so it can be stubbed out during tests.
        self._prep_wrapped_messages()

    def _prep_wrapped_messages(self):
        # Retries are supplied per call by the client; each call gets its own
        # attempt budget.
        self._wrapped_methods = {
            self.chat_completion: gapic_v1.method.wrap_method(
                self.chat_completion,
                default_timeout=DEFAULT_TIMEOUT,
                client_info=_client_info,
            ),
        }

    @property
    def host(self) -> typing.Optional[str]:
        return self._host

    @abc.abstractmethod
    def chat_completion(
        self,
        request: reformulate.ChatCompletionRequest,
        *,
        timeout: typing.Optional[float] = None,
        metadata: typing.Sequence[typing.Tuple[str, str]] = (),
    ) -> reformulate.ChatCompletionResponse:
        raise NotImplementedError()


__all__ = ("ChatTransport",)
