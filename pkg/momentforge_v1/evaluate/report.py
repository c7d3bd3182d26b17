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

"""Side-by-side comparison of two metric rows.

Columns follow the usual grounding-table layout: one group per IoU
threshold, one column per rank inside each group. Percentages are rounded
half-up to two decimals before the signed deltas are taken, so deltas
match what the rendered rows show.
"""

import itertools
import logging
from typing import List, Optional, Sequence, Tuple

from momentforge_v1 import exceptions
from momentforge_v1.evaluate import metrics
from momentforge_v1.types import evaluate

_LOGGER = logging.getLogger(__name__)

_LABEL_WIDTH = 12
_CELL_WIDTH = 8


def _same_spec(a: evaluate.MetricSpec, b: evaluate.MetricSpec) -> bool:
    return list(a.ranks) == list(b.ranks) and list(a.iou_thresholds) == list(
        b.iou_thresholds
    )


def compare_report(
    base: evaluate.MetricsTable,
    other: evaluate.MetricsTable,
    labels: Optional[Tuple[str, str]] = None,
) -> evaluate.ComparisonReport:
    """Compare two metric tables cell by cell.

    Args:
        base (~.evaluate.MetricsTable): The reference row.
        other (~.evaluate.MetricsTable): The compared row.
        labels (Optional[Tuple[str, str]]): Row labels; default to the
            tables' own labels.

    Returns:
        ~.evaluate.ComparisonReport: Rounded values and ``other - base``
        deltas in table order.

    Raises:
        ~.exceptions.SpecMismatchError: If the tables were computed with
            different ranks or thresholds.
    """
    base_spec, other_spec = metrics.spec_of(base), metrics.spec_of(other)
    if not _same_spec(base_spec, other_spec):
        raise exceptions.SpecMismatchError(
            "cannot compare ranks {} at IoU {} with ranks {} at IoU {}".format(
                list(base_spec.ranks),
                list(base_spec.iou_thresholds),
                list(other_spec.ranks),
                list(other_spec.iou_thresholds),
            )
        )
    if base.query_count != other.query_count:
        _LOGGER.warning(
            "evaluate.report.query_count_mismatch",
            extra={"base": base.query_count, "other": other.query_count},
        )

    base_label, other_label = labels or (base.label, other.label)
    columns = []
    for n, m in metrics.table_order(base_spec):
        base_pct = metrics.round_pct(metrics.recall(base, n, m))
        other_pct = metrics.round_pct(metrics.recall(other, n, m))
        columns.append(
            evaluate.ComparisonColumn(
                n=n,
                iou=m,
                base_pct=float(base_pct),
                other_pct=float(other_pct),
                delta_pct=float(other_pct - base_pct),
            )
        )
    return evaluate.ComparisonReport(
        base_label=base_label,
        other_label=other_label,
        query_count=base.query_count,
        columns=columns,
    )


def _groups(columns: Sequence[evaluate.ComparisonColumn]):
    return [
        (iou, list(group))
        for iou, group in itertools.groupby(columns, key=lambda c: c.iou)
    ]


def _row(label: str, groups, values) -> str:
    cells = [label.ljust(_LABEL_WIDTH)]
    for _, group in groups:
        cells.append("".join(values(column).ljust(_CELL_WIDTH) for column in group))
    return " | ".join(cells).rstrip()


def _pct(value: float) -> str:
    return str(metrics.round_pct(value))


def _delta(value: float) -> str:
    return "{:+.2f}".format(metrics.round_pct(value))


def _header(groups) -> List[str]:
    # Groups keep their full width so the separators line up with the rows.
    top = [" " * _LABEL_WIDTH] + [
        "IoU={}".format(iou).ljust(_CELL_WIDTH * len(g)) for iou, g in groups
    ]
    ranks = [" " * _LABEL_WIDTH] + [
        "".join("R@{}".format(c.n).ljust(_CELL_WIDTH) for c in g) for _, g in groups
    ]
    return [" | ".join(top).rstrip(), " | ".join(ranks).rstrip()]


def render_table(report: evaluate.ComparisonReport) -> str:
    """The report as a plain-text table with a delta row."""
    groups = _groups(report.columns)
    lines = _header(groups)
    lines.append(_row(report.base_label, groups, lambda c: _pct(c.base_pct)))
    lines.append(_row(report.other_label, groups, lambda c: _pct(c.other_pct)))
    lines.append(_row("delta", groups, lambda c: _delta(c.delta_pct)))
    lines.append("({} queries)".format(report.query_count))
    return "\n".join(lines) + "\n"


def metrics_table_text(table: evaluate.MetricsTable) -> str:
    """One metrics row as a plain-text table."""
    groups = _groups(table.cells)
    lines = _header(groups)
    lines.append(_row(table.label or "run", groups, lambda c: _pct(c.recall_pct)))
    lines.append("({} queries)".format(table.query_count))
    return "\n".join(lines) + "\n"
