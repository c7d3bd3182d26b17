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

"""MLF1 feature files.

Layout: the magic bytes ``MLF1``, then little-endian ``u32 T``, ``u32 D``
and ``f32 step_seconds``, then ``T * D`` little-endian ``f32`` values in
step-major order. One file per clip, named ``<clip_id>.mlf``.
"""

import logging
import math
import os
import struct

import numpy as np  # type: ignore

from momentforge_v1 import exceptions
from momentforge_v1.types import ingest

_LOGGER = logging.getLogger(__name__)

MAGIC = b"MLF1"
SUFFIX = ".mlf"

_HEADER = struct.Struct("<4sIIf")
_DTYPE = np.dtype("<f4")


def from_array(clip_id: str, values, step_seconds: float) -> ingest.FeatureMatrix:
    """Build a :class:`~.ingest.FeatureMatrix` from a ``T x D`` array."""
    array = np.ascontiguousarray(values, dtype=_DTYPE)
    if array.ndim != 2 or array.shape[0] == 0 or array.shape[1] == 0:
        raise exceptions.FeatureFormatError(
            "{}: features must be a non-empty T x D array, got shape {}".format(
                clip_id, array.shape
            )
        )
    return ingest.FeatureMatrix(
        clip_id=clip_id,
        num_steps=array.shape[0],
        dim=array.shape[1],
        step_seconds=step_seconds,
        content=array.tobytes(),
    )


def to_array(fm: ingest.FeatureMatrix) -> np.ndarray:
    """The ``T x D`` float32 view of a feature matrix."""
    return np.frombuffer(fm.content, dtype=_DTYPE).reshape(fm.num_steps, fm.dim)


def encode_features(fm: ingest.FeatureMatrix) -> bytes:
    return _HEADER.pack(MAGIC, fm.num_steps, fm.dim, fm.step_seconds) + fm.content


def decode_features(
    data: bytes, clip_id: str = "", source: str = "<bytes>"
) -> ingest.FeatureMatrix:
    """Decode MLF1 bytes.

    Raises:
        ~.exceptions.BadMagicError: The magic bytes are wrong.
        ~.exceptions.TruncatedFeaturesError: The header or payload is short.
        ~.exceptions.NonFiniteFeatureError: A value is NaN or infinite.
        ~.exceptions.FeatureFormatError: Any other layout violation.
    """
    if len(data) < len(MAGIC) or data[: len(MAGIC)] != MAGIC:
        raise exceptions.BadMagicError("{}: not an MLF1 feature file".format(source))
    if len(data) < _HEADER.size:
        raise exceptions.TruncatedFeaturesError("{}: truncated header".format(source))

    _, num_steps, dim, step_seconds = _HEADER.unpack_from(data)
    if num_steps == 0 or dim == 0:
        raise exceptions.FeatureFormatError(
            "{}: empty feature matrix ({} x {})".format(source, num_steps, dim)
        )
    if not math.isfinite(step_seconds) or step_seconds <= 0:
        raise exceptions.FeatureFormatError(
            "{}: step_seconds must be positive, got {}".format(source, step_seconds)
        )

    expected = num_steps * dim * _DTYPE.itemsize
    payload = data[_HEADER.size :]
    if len(payload) < expected:
        raise exceptions.TruncatedFeaturesError(
            "{}: payload has {} bytes, header declares {}".format(
                source, len(payload), expected
            )
        )
    if len(payload) > expected:
        raise exceptions.FeatureFormatError(
            "{}: {} trailing bytes after payload".format(
                source, len(payload) - expected
            )
        )

    values = np.frombuffer(payload, dtype=_DTYPE).reshape(num_steps, dim)
    bad = np.argwhere(~np.isfinite(values))
    if bad.size:
        step, column = bad[0]
        raise exceptions.NonFiniteFeatureError(source, int(step), int(column))

    return ingest.FeatureMatrix(
        clip_id=clip_id,
        num_steps=num_steps,
        dim=dim,
        step_seconds=step_seconds,
        content=bytes(payload),
    )


def load_features(path: str) -> ingest.FeatureMatrix:
    """Load an MLF1 file; the clip id is the file name without ``.mlf``."""
    with open(path, "rb") as fh:
        data = fh.read()
    clip_id = os.path.basename(path)
    if clip_id.endswith(SUFFIX):
        clip_id = clip_id[: -len(SUFFIX)]
    return decode_features(data, clip_id=clip_id, source=path)


def save_features(fm: ingest.FeatureMatrix, path: str) -> None:
    data = encode_features(fm)
    try:
        with open(path, "wb") as fh:
            fh.write(data)
    except OSError as exc:
        raise exceptions.OutputWriteError(path, exc) from exc


def features_path(features_dir: str, clip_id: str) -> str:
    return os.path.join(features_dir, clip_id + SUFFIX)


def load_clip_features(features_dir: str, clip_id: str) -> ingest.FeatureMatrix:
    """Load the features of one clip from a features directory.

    Raises:
        ~.exceptions.FeatureNotFoundError: No ``<clip_id>.mlf`` exists.
    """
    path = features_path(features_dir, clip_id)
    if not os.path.isfile(path):
        raise exceptions.FeatureNotFoundError(clip_id, path)
    return load_features(path)


def covers_duration(fm: ingest.FeatureMatrix, duration: float) -> bool:
    """Whether ``T * step_seconds`` matches ``duration`` within one step."""
    return abs(fm.num_steps * fm.step_seconds - duration) <= fm.step_seconds + 1e-6


def check_duration(fm: ingest.FeatureMatrix, duration: float) -> None:
    if not covers_duration(fm, duration):
        _LOGGER.warning(
            "ingest.features.duration_mismatch",
            extra={
                "clip_id": fm.clip_id,
                "feature_seconds": fm.num_steps * fm.step_seconds,
                "duration": duration,
            },
        )
