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


__protobuf__ = proto.module(
    package="momentforge.v1",
    manifest={
        "MetricSpec",
        "MetricCell",
        "MetricsTable",
        "CorpusStats",
        "ComparisonColumn",
        "ComparisonReport",
    },
)


class MetricSpec(proto.Message):
    r"""Which "R@n, IoU=m" cells to compute.

    Attributes:
        ranks (Sequence[int]):
            Strictly increasing positive ranks n. Defaults to
            ``[1, 5]``.
        iou_thresholds (Sequence[float]):
            Strictly increasing thresholds m in ``(0, 1]``. Defaults
            to ``[0.3, 0.5]``.
    """

    ranks = proto.RepeatedField(proto.INT32, number=1)

    iou_thresholds = proto.RepeatedField(proto.DOUBLE, number=2)


class MetricCell(proto.Message):
    r"""One recall value.

    Attributes:
        n (int):
            Rank cutoff.
        iou (float):
            IoU threshold; a prediction counts when its IoU is
            strictly larger.
        recall_pct (float):
            Percentage of queries with a hit, in ``[0, 100]``.
            Stored unrounded.
    """

    n = proto.Field(proto.INT32, number=1)

    iou = proto.Field(proto.DOUBLE, number=2)

    recall_pct = proto.Field(proto.DOUBLE, number=3)


class MetricsTable(proto.Message):
    r"""Recall of one run over an annotation set.

    Attributes:
        label (str):
            Row label, e.g. "base" or "steps".
        query_count (int):
            Number of annotated queries (the denominator).
        cells (Sequence[~.evaluate.MetricCell]):
            One cell per (m, n), thresholds outer, ranks inner.
    """

    label = proto.Field(proto.STRING, number=1)

    query_count = proto.Field(proto.INT32, number=2)

    cells = proto.RepeatedField(proto.MESSAGE, number=3, message=MetricCell,)


class CorpusStats(proto.Message):
    r"""Word statistics of a reformulated corpus.

    Attributes:
        query_count (int):
            Number of reformulated queries.
        mean_words_original (float):
            Mean whitespace-token count of the original queries.
        mean_words_reformulated (float):
            Mean whitespace-token count of the reformulations.
        mean_steps (float):
            Mean number of parsed instruction steps.
        template_counts (Sequence[~.evaluate.CorpusStats.TemplateCountsEntry]):
            Queries per matched template name. Queries matching no
            template are counted under ``UNMATCHED``.
    """

    query_count = proto.Field(proto.INT32, number=1)

    mean_words_original = proto.Field(proto.DOUBLE, number=2)

    mean_words_reformulated = proto.Field(proto.DOUBLE, number=3)

    mean_steps = proto.Field(proto.DOUBLE, number=4)

    template_counts = proto.MapField(proto.STRING, proto.INT32, number=5)


class ComparisonColumn(proto.Message):
    r"""One column of a comparison table.

    Attributes:
        n (int):
            Rank cutoff.
        iou (float):
            IoU threshold.
        base_pct (float):
            Recall of the base row, rounded to two decimals.
        other_pct (float):
            Recall of the compared row, rounded to two decimals.
        delta_pct (float):
            ``other_pct - base_pct``.
    """

    n = proto.Field(proto.INT32, number=1)

    iou = proto.Field(proto.DOUBLE, number=2)

    base_pct = proto.Field(proto.DOUBLE, number=3)

    other_pct = proto.Field(proto.DOUBLE, number=4)

    delta_pct = proto.Field(proto.DOUBLE, number=5)


class ComparisonReport(proto.Message):
    r"""Two metric rows side by side with signed deltas.

    Attributes:
        base_label (str):
            Label of the first row.
        other_label (str):
            Label of the second row.
        query_count (int):
            Shared query count.
        columns (Sequence[~.evaluate.ComparisonColumn]):
            Columns in table order: for each IoU threshold, each
            rank.
    """

    base_label = proto.Field(proto.STRING, number=1)

    other_label = proto.Field(proto.STRING, number=2)

    query_count = proto.Field(proto.INT32, number=3)

    columns = proto.RepeatedField(proto.MESSAGE, number=4, message=ComparisonColumn,)


__all__ = tuple(sorted(__protobuf__.manifest))
