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

from .core import (
    TemplateId,
    TemporalInterval,
    ClipMeta,
    Query,
    Annotation,
)
from .ingest import (
    ClipAnnotations,
    AnnotationSet,
    FeatureMatrix,
    SynthSpec,
)
from .reformulate import (
    Relation,
    CompletionSource,
    PromptText,
    ReformulatedQuery,
    InstructionStep,
    InstructionSequence,
    ChatMessage,
    ChatCompletionRequest,
    ChatChoice,
    ChatCompletionResponse,
    CacheEntry,
)
from .localize import (
    WindowConfig,
    CandidateMap,
    ScoreMap,
    Prediction,
    QueryEmbedding,
)
from .evaluate import (
    MetricSpec,
    MetricCell,
    MetricsTable,
    CorpusStats,
    ComparisonColumn,
    ComparisonReport,
)
from .config import RunConfig


__all__ = (
    "TemplateId",
    "TemporalInterval",
    "ClipMeta",
    "Query",
    "Annotation",
    "ClipAnnotations",
    "AnnotationSet",
    "FeatureMatrix",
    "SynthSpec",
    "Relation",
    "CompletionSource",
    "PromptText",
    "ReformulatedQuery",
    "InstructionStep",
    "InstructionSequence",
    "ChatMessage",
    "ChatCompletionRequest",
    "ChatChoice",
    "ChatCompletionResponse",
    "CacheEntry",
    "WindowConfig",
    "CandidateMap",
    "ScoreMap",
    "Prediction",
    "QueryEmbedding",
    "MetricSpec",
    "MetricCell",
    "MetricsTable",
    "CorpusStats",
    "ComparisonColumn",
    "ComparisonReport",
    "RunConfig",
)
