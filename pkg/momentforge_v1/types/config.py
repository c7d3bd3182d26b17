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

import proto  # type: ignore

from momentforge_v1.types import evaluate
from momentforge_v1.types import localize


__protobuf__ = proto.module(package="momentforge.v1", manifest={"RunConfig",},)


class RunConfig(proto.Message):
    r"""Everything a CLI run needs.

    Attributes:
        annotations (str):
            Annotation JSON path.
        features_dir (str):
            Directory holding ``<clip_id>.mlf`` files.
        cache_dir (str):
            Completion cache directory.
        out (str):
            Output path (a file, or a directory for ``synth``).
        corpus (str):
            Reformulated-corpus path consumed by ``localize`` and
            ``stats``.
        window (~.localize.WindowConfig):
            Sliding-window parameters.
        metric_spec (~.evaluate.MetricSpec):
            Evaluated ranks and thresholds.
        dim (int):
            Text embedding dimension.
        seed (int):
            Text embedding hash seed.
        live (bool):
            Use the live chat endpoint instead of the mock.
        top_k (int):
            Predictions kept per query.
        nms_threshold (float):
            IoU above which lower-ranked predictions are suppressed.
        model (str):
            Chat model name.
        temperature (float):
            Sampling temperature.
        workers (int):
            Concurrent reformulation workers.
        label (str):
            Row label written into metrics.
    """

    annotations = proto.Field(proto.STRING, number=1)

    features_dir = proto.Field(proto.STRING, number=2)

    cache_dir = proto.Field(proto.STRING, number=3)

    out = proto.Field(proto.STRING, number=4)

    corpus = proto.Field(proto.STRING, number=5)

    window = proto.Field(proto.MESSAGE, number=6, message=localize.WindowConfig,)

    metric_spec = proto.Field(proto.MESSAGE, number=7, message=evaluate.MetricSpec,)

    dim = proto.Field(proto.INT32, number=8)

    seed = proto.Field(proto.INT64, number=9)

    live = proto.Field(proto.BOOL, number=10)

    top_k = proto.Field(proto.INT32, number=11)

    nms_threshold = proto.Field(proto.DOUBLE, number=12)

    model = proto.Field(proto.STRING, number=13)

    temperature = proto.Field(proto.DOUBLE, number=14)

    workers = proto.Field(proto.INT32, number=15)

    label = proto.Field(proto.STRING, number=16)


__all__ = tuple(sorted(__protobuf__.manifest))
