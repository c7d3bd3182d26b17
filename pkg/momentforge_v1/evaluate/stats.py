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

import collections
import math
from typing import Iterable, Sequence, Tuple

from momentforge_v1 import exceptions
from momentforge_v1.services.reformulator import prompts
from momentforge_v1.types import core
from momentforge_v1.types import evaluate
from momentforge_v1.types import reformulate

UNMATCHED = "UNMATCHED"

# Reported means of the original and reformulated validation queries.
REFERENCE_MEAN_WORDS = (7.56, 14.91)


def word_count(text: str) -> int:
    """Whitespace-delimited tokens; attached punctuation stays on its word."""
    return len(text.split())


def template_name(query_text: str) -> str:
    template = prompts.match_template(query_text)
    return UNMATCHED if template is None else core.TemplateId(template).name


def _mean(values: Iterable[float]) -> float:
    values = list(values)
    return math.fsum(values) / len(values)


def corpus_stats(
    reformulations: Sequence[
        Tuple[reformulate.ReformulatedQuery, reformulate.InstructionSequence]
    ],
) -> evaluate.CorpusStats:
    """Word and step statistics of a reformulated corpus.

    Args:
        reformulations (Sequence[Tuple[~.ReformulatedQuery, ~.InstructionSequence]]):
            Each reformulation with its parsed instructions.

    Returns:
        ~.evaluate.CorpusStats: Means over the corpus and per-template
        counts of the original queries.

    Raises:
        ~.exceptions.EmptyCorpusError: If ``reformulations`` is empty.
    """
    if not reformulations:
        raise exceptions.EmptyCorpusError(
            "cannot compute statistics of an empty corpus"
        )

    counts = collections.Counter(
        template_name(r.original_text) for r, _ in reformulations
    )
    return evaluate.CorpusStats(
        query_count=len(reformulations),
        mean_words_original=_mean(
            word_count(r.original_text) for r, _ in reformulations
        ),
        mean_words_reformulated=_mean(
            word_count(r.reformulated_text) for r, _ in reformulations
        ),
        mean_steps=_mean(len(s.steps) for _, s in reformulations),
        template_counts=dict(counts),
    )


def summary_line(stats: evaluate.CorpusStats) -> str:
    """``original X → reformulated Y words`` with the reference means."""
    return "original {:.2f} → reformulated {:.2f} words (reference {} → {})".format(
        stats.mean_words_original,
        stats.mean_words_reformulated,
        *REFERENCE_MEAN_WORDS
    )
