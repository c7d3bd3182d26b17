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

"""Content-addressed completion cache.

Each completion is stored as ``<cache_dir>/<key>.json`` where ``key`` is
the SHA-256 of the prompt, model and temperature. Entries are written to a
temporary file in the same directory and renamed into place, so readers
never see a partial entry and concurrent writers of one key leave one
complete copy.
"""

import hashlib
import json
import logging
import os
import tempfile
import time
from typing import Optional

from momentforge_v1 import exceptions
from momentforge_v1.types import reformulate

_LOGGER = logging.getLogger(__name__)


def prompt_hash(prompt_text: str) -> str:
    return hashlib.sha256(prompt_text.encode("utf-8")).hexdigest()


def cache_key(prompt: reformulate.PromptText) -> str:
    """The cache key of a prompt: a SHA-256 hex digest."""
    key_obj = {
        "prompt": prompt.text,
        "model": prompt.model_hint,
        "temperature": float(prompt.temperature),
    }
    return hashlib.sha256(
        json.dumps(key_obj, ensure_ascii=False, sort_keys=True).encode("utf-8")
    ).hexdigest()


class CompletionCache:
    """A directory of cached completions.

    Args:
        cache_dir (str): The cache directory; created on first write.
    """

    def __init__(self, cache_dir: str):
        self._cache_dir = cache_dir

    @property
    def cache_dir(self) -> str:
        return self._cache_dir

    def path(self, key: str) -> str:
        return os.path.join(self._cache_dir, key + ".json")

    def get(self, key: str) -> Optional[reformulate.CacheEntry]:
        """The entry stored under ``key``, or ``None``.

        Unreadable entries are treated as misses.
        """
        try:
            with open(self.path(key), encoding="utf-8") as fh:
                payload = json.load(fh)
        except FileNotFoundError:
            return None
        except (OSError, ValueError) as exc:
            _LOGGER.warning(
                "reformulate.cache.unreadable", extra={"key": key, "error": str(exc)}
            )
            return None
        completion = payload.get("completion") if isinstance(payload, dict) else None
        if not isinstance(completion, str) or not completion:
            _LOGGER.warning("reformulate.cache.unreadable", extra={"key": key})
            return None
        return reformulate.CacheEntry(
            prompt_hash=payload.get("prompt_hash", ""),
            model=payload.get("model", ""),
            temperature=payload.get("temperature", 0.0),
            completion=completion,
            created_unix=payload.get("created_unix", 0),
        )

    def put(
        self, key: str, prompt: reformulate.PromptText, completion: str
    ) -> reformulate.CacheEntry:
        """Store a completion atomically.

        Raises:
            ~.exceptions.CacheWriteError: If the entry cannot be written.
        """
        entry = reformulate.CacheEntry(
            prompt_hash=prompt_hash(prompt.text),
            model=prompt.model_hint,
            temperature=prompt.temperature,
            completion=completion,
            created_unix=int(time.time()),
        )
        payload = {
            "prompt_hash": entry.prompt_hash,
            "model": entry.model,
            "temperature": entry.temperature,
            "completion": entry.completion,
            "created_unix": entry.created_unix,
        }
        tmp_path = None
        try:
            os.makedirs(self._cache_dir, exist_ok=True)
            fd, tmp_path = tempfile.mkstemp(
                prefix=key, suffix=".tmp", dir=self._cache_dir
            )
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                json.dump(payload, fh, ensure_ascii=False, indent=2)
                fh.write("\n")
            os.replace(tmp_path, self.path(key))
        except OSError as exc:
            if tmp_path is not None and os.path.exists(tmp_path):
                os.unlink(tmp_path)
            raise exceptions.CacheWriteError(
                "cannot write cache entry {}: {}".format(self.path(key), exc)
            ) from exc
        return entry

    def __len__(self) -> int:
        if not os.path.isdir(self._cache_dir):
            return 0
        return sum(1 for name in os.listdir(self._cache_dir) if name.endswith(".json"))
