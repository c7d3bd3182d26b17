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

"""Errors raised by momentforge.

Input and validation problems derive from :class:`ValidationError` and map
to exit code 2 on the command line. Chat transport failures are reported
with :mod:`google.api_core.exceptions` and map to exit code 3, together
with :class:`EmptyCompletionError`.
"""

from typing import Iterable


class MomentForgeError(Exception):
    """Base class for all momentforge errors."""


class ValidationError(MomentForgeError, ValueError):
    """An input did not satisfy its documented contract."""


class AnnotationFormatError(ValidationError):
    """An annotation file is malformed or violates an invariant."""


class FeatureFormatError(ValidationError):
    """A feature file does not follow the MLF1 layout."""


class BadMagicError(FeatureFormatError):
    """The feature file does not start with ``MLF1``."""


class TruncatedFeaturesError(FeatureFormatError):
    """The feature payload is shorter than its header declares."""


class NonFiniteFeatureError(FeatureFormatError):
    """A feature value is NaN or infinite."""

    def __init__(self, path: str, step: int, dim: int):
        super().__init__(
            "{}: non-finite feature value at step {}, dim {}".format(path, step, dim)
        )
        self.step = step
        self.dim = dim


class FeatureNotFoundError(ValidationError):
    """No feature file exists for a clip."""

    def __init__(self, clip_id: str, path: str):
        super().__init__(
            "no features for clip {!r} (expected {})".format(clip_id, path)
        )
        self.clip_id = clip_id


class DimensionMismatchError(ValidationError):
    """A query embedding and a feature matrix disagree on dimension."""


class InfeasibleSpecError(ValidationError):
    """A synthetic corpus specification cannot be realized."""


class CandidateIndexError(ValidationError, IndexError):
    """A candidate grid index lies outside the upper triangle."""


class QueryIdMismatchError(ValidationError):
    """Predictions reference queries the annotations do not contain."""

    def __init__(self, query_ids: Iterable[str]):
        self.query_ids = sorted(query_ids)
        super().__init__(
            "predictions for unknown query ids: {}".format(", ".join(self.query_ids))
        )


class SpecMismatchError(ValidationError):
    """Two metric tables were computed with different ranks or thresholds."""


class EmptyCorpusError(ValidationError):
    """Statistics were requested over an empty corpus."""


class ConfigError(ValidationError):
    """A configuration file or value could not be used."""


class EmptyCompletionError(MomentForgeError):
    """The chat endpoint returned no completion text."""


class CacheWriteError(MomentForgeError):
    """A completion could not be stored in the cache."""


class OutputWriteError(ValidationError):
    """An output file or directory could not be written."""

    def __init__(self, path: str, error: OSError):
        super().__init__("{}: cannot write output: {}".format(path, error))
        self.path = path
