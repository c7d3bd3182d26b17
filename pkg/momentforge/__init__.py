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

from momentforge_v1.services.reformulator.client import ReformulatorClient
from momentforge_v1.services.reformulator.cache import CompletionCache
from momentforge_v1.types.core import Annotation
from momentforge_v1.types.core import ClipMeta
from momentforge_v1.types.core import Query
from momentforge_v1.types.core import TemplateId
from momentforge_v1.types.core import TemporalInterval
from momentforge_v1.types.evaluate import ComparisonReport
from momentforge_v1.types.evaluate import CorpusStats
from momentforge_v1.types.evaluate import MetricSpec
from momentforge_v1.types.evaluate import MetricsTable
from momentforge_v1.types.ingest import AnnotationSet
from momentforge_v1.types.ingest import FeatureMatrix
from momentforge_v1.types.ingest import SynthSpec
from momentforge_v1.types.localize import Prediction
from momentforge_v1.types.localize import QueryEmbedding
from momentforge_v1.types.localize import WindowConfig
from momentforge_v1.types.reformulate import InstructionSequence
from momentforge_v1.types.reformulate import InstructionStep
from momentforge_v1.types.reformulate import ReformulatedQuery
from momentforge_v1.types.reformulate import Relation

__all__ = (
    "Annotation",
    "AnnotationSet",
    "ClipMeta",
    "ComparisonReport",
    "CompletionCache",
    "CorpusStats",
    "FeatureMatrix",
    "InstructionSequence",
    "InstructionStep",
    "MetricSpec",
    "MetricsTable",
    "Prediction",
    "Query",
    "QueryEmbedding",
    "ReformulatedQuery",
    "ReformulatorClient",
    "Relation",
    "SynthSpec",
    "TemplateId",
    "TemporalInterval",
    "WindowConfig",
)
