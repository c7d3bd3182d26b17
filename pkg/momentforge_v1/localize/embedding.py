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

"""Hashed bag-of-words text embedding.

Each lowercased alphanumeric token is hashed with a seeded BLAKE2b into a
bucket in ``[0, dim)`` and a sign. Counts are accumulated per bucket and
the vector is L2-normalized.
"""

import hashlib
import re
from typing import List, Tuple

import numpy as np  # type: ignore

from momentforge_v1.types import localize

_TOKEN_RE = re.compile(r"[^\W_]+")


def tokenize(text: str) -> List[str]:
    return _TOKEN_RE.findall(text.lower())


def token_bucket(token: str, dim: int, seed: int) -> Tuple[int, int]:
    """Return ``(bucket, sign)`` for a token under a hash seed."""
    digest = hashlib.blake2b(
        token.encode("utf-8"),
        digest_size=8,
        key=int(seed).to_bytes(8, "little", signed=True),
    ).digest()
    bucket = int.from_bytes(digest[:4], "little") % dim
    sign = 1 if digest[4] & 1 == 0 else -1
    return bucket, sign


def embed_vector(text: str, dim: int, seed: int = 0) -> np.ndarray:
    """The embedding of ``text`` as a float64 array of length ``dim``."""
    if dim < 1:
        raise ValueError("embedding dim must be positive, got {}".format(dim))
    vector = np.zeros(dim, dtype=np.float64)
    for token in tokenize(text):
        bucket, sign = token_bucket(token, dim, seed)
        vector[bucket] += sign
    norm = np.linalg.norm(vector)
    if norm > 0:
        vector /= norm
    return vector


def embed_text(text: str, dim: int, seed: int = 0) -> localize.QueryEmbedding:
    """Embed a sentence.

    Args:
        text (str): The sentence. Empty text yields the zero vector.
        dim (int): Embedding size.
        seed (int): Hash seed; must match the seed features were planted
            with when localizing synthetic corpora.

    Returns:
        ~.localize.QueryEmbedding: A unit vector, or zero.
    """
    return localize.QueryEmbedding(
        dim=dim, values=embed_vector(text, dim, seed).tolist()
    )


def as_array(q: localize.QueryEmbedding) -> np.ndarray:
    return np.asarray(q.values, dtype=np.float64)
