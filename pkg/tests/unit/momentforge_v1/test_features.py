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

import struct

import numpy as np
import pytest

from momentforge_v1 import exceptions
from momentforge_v1.ingest import features


def matrix(steps=4, dim=3, step_seconds=0.5, clip_id="clip_a"):
    values = np.arange(steps * dim, dtype=np.float32).reshape(steps, dim)
    return features.from_array(clip_id, values, step_seconds)


def test_decode_header_round_trip():
    fm = features.decode_features(features.encode_features(matrix()), clip_id="clip_a")

    assert (fm.num_steps, fm.dim, fm.step_seconds) == (4, 3, 0.5)
    assert features.to_array(fm).size == 12
    np.testing.assert_array_equal(features.to_array(fm)[2], [6.0, 7.0, 8.0])


def test_payload_one_float_short():
    data = features.encode_features(matrix())[:-4]

    with pytest.raises(exceptions.TruncatedFeaturesError):
        features.decode_features(data)


def test_truncated_header():
    with pytest.raises(exceptions.TruncatedFeaturesError):
        features.decode_features(b"MLF1\x04\x00")


def test_bad_magic():
    data = b"MLF2" + features.encode_features(matrix())[4:]

    with pytest.raises(exceptions.BadMagicError):
        features.decode_features(data)


def test_trailing_bytes():
    data = features.encode_features(matrix()) + b"\x00\x00\x00\x00"

    with pytest.raises(exceptions.FeatureFormatError, match="trailing"):
        features.decode_features(data)


def test_empty_matrix_header():
    data = struct.pack("<4sIIf", b"MLF1", 0, 3, 0.5)

    with pytest.raises(exceptions.FeatureFormatError):
        features.decode_features(data)


def test_non_finite_value_names_step_and_dim():
    values = np.zeros((4, 3), dtype=np.float32)
    values[2, 1] = np.nan
    values[3, 0] = np.inf
    data = struct.pack("<4sIIf", b"MLF1", 4, 3, 0.5) + values.astype("<f4").tobytes()

    with pytest.raises(exceptions.NonFiniteFeatureError) as excinfo:
        features.decode_features(data)

    assert (excinfo.value.step, excinfo.value.dim) == (2, 1)
    assert "step 2, dim 1" in str(excinfo.value)


def test_from_array_rejects_empty():
    with pytest.raises(exceptions.FeatureFormatError):
        features.from_array("clip_a", np.zeros((0, 3)), 0.5)


def test_save_and_load_clip_features(tmp_path):
    fm = matrix(clip_id="clip_b")
    features.save_features(fm, features.features_path(str(tmp_path), "clip_b"))

    loaded = features.load_clip_features(str(tmp_path), "clip_b")

    assert loaded.clip_id == "clip_b"
    assert loaded == fm


def test_missing_clip_features_names_clip(tmp_path):
    with pytest.raises(exceptions.FeatureNotFoundError, match="clip_zz") as excinfo:
        features.load_clip_features(str(tmp_path), "clip_zz")

    assert excinfo.value.clip_id == "clip_zz"


def test_covers_duration():
    fm = matrix(steps=200, dim=2, step_seconds=0.5)

    assert features.covers_duration(fm, 100.0)
    assert features.covers_duration(fm, 99.7)
    assert not features.covers_duration(fm, 120.0)
