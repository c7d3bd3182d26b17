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

from .services.reformulator import ReformulatorClient
from .services.reformulator.cache import CompletionCache
from .types.core import Annotation
from .types.core import ClipMeta
from .types.core import Query
from .types.core import TemplateId
from .types.core import TemporalInterval
from .types.evaluate import ComparisonReport
from .types.evaluate import CorpusStats
from .types.evaluate import MetricSpec
from .types.evaluate import MetricsTable
from .types.ingest import AnnotationSet
from .types.ingest import FeatureMatrix
from .types.ingest import SynthSpec
from .types.localize import Prediction
from .types.localize import QueryEmbedding
from .types.localize import WindowConfig
from .types.reformulate import InstructionSequence
from .types.reformulate import InstructionStep
from .types.reformulate import ReformulatedQuery
from .types.reformulate import Relation


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
