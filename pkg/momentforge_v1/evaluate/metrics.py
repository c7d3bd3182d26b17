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

"""R@n, IoU=m recall.

A query counts as a hit at (n, m) when at least one of its top-n
predictions overlaps the ground truth with IoU strictly larger than m.
Recall is the percentage of annotated queries that are hits; queries
without predictions are misses.
"""

import decimal
import logging
from typing import List, Mapping, Optional, Sequence, Tuple

from momentforge_v1 import exceptions
from momentforge_v1 import intervals
from momentforge_v1.ingest import annotations as annotations_io
from momentforge_v1.types import core
from momentforge_v1.types import evaluate
from momentforge_v1.types import ingest
from momentforge_v1.types import localize

_LOGGER = logging.getLogger(__name__)

DEFAULT_RANKS = (1, 5)
DEFAULT_IOU_THRESHOLDS = (0.3, 0.5)

_CENT = decimal.Decimal("0.01")


def default_metric_spec() -> evaluate.MetricSpec:
    return evaluate.MetricSpec(
        ranks=list(DEFAULT_RANKS), iou_thresholds=list(DEFAULT_IOU_THRESHOLDS)
    )


def validate_metric_spec(spec: evaluate.MetricSpec) -> evaluate.MetricSpec:
    """Check ranks and thresholds.

    Raises:
        ~.exceptions.ValidationError: Unless ranks are positive and strictly
            increasing and thresholds are strictly increasing within
            ``(0, 1]``.
    """
    ranks = list(spec.ranks)
    thresholds = list(spec.iou_thresholds)
    if not ranks or not thresholds:
        raise exceptions.ValidationError("metric spec needs ranks and IoU thresholds")
    if ranks[0] < 1 or any(b <= a for a, b in zip(ranks, ranks[1:])):
        raise exceptions.ValidationError(
            "ranks must be positive and strictly increasing, got {}".format(ranks)
        )
    if not 0.0 < thresholds[0] or thresholds[-1] > 1.0:
        raise exceptions.ValidationError(
            "IoU thresholds must lie in (0, 1], got {}".format(thresholds)
        )
    if any(b <= a for a, b in zip(thresholds, thresholds[1:])):
        raise exceptions.ValidationError(
            "IoU thresholds must be strictly increasing, got {}".format(thresholds)
        )
    return spec


def table_order(spec: evaluate.MetricSpec) -> List[Tuple[int, float]]:
    """The (n, m) cells of ``spec``: thresholds outer, ranks inner."""
    return [(n, m) for m in spec.iou_thresholds for n in spec.ranks]


def hit(
    preds: Sequence[localize.Prediction],
    gt: core.TemporalInterval,
    n: int,
    m: float,
) -> bool:
    """Whether any of the first ``n`` predictions has IoU above ``m``.

    ``preds`` must already be ranked best first.

    >>> from momentforge_v1.types import TemporalInterval as I, Prediction as P
    >>> preds = [P(interval=I(start=0, end=5)), P(interval=I(start=10, end=20))]
    >>> gt = I(start=10, end=20)
    >>> hit(preds, gt, 1, 0.5), hit(preds, gt, 5, 0.5)
    (False, True)
    """
    return any(intervals.iou(p.interval, gt) > m for p in preds[:n])


def _best_rank(
    preds: Sequence[localize.Prediction], gt: core.TemporalInterval, m: float
) -> Optional[int]:
    for rank, pred in enumerate(preds, start=1):
        if intervals.iou(pred.interval, gt) > m:
            return rank
    return None


def aggregate(
    results: Mapping[str, Sequence[localize.Prediction]],
    annotations: ingest.AnnotationSet,
    spec: evaluate.MetricSpec = None,
    *,
    label: str = "",
) -> evaluate.MetricsTable:
    """Recall of a prediction dump over an annotation set.

    Args:
        results (Mapping[str, Sequence[~.localize.Prediction]]): Ranked
            predictions per query id. Missing ids count as misses.
        annotations (~.ingest.AnnotationSet): Ground truth.
        spec (~.evaluate.MetricSpec): Cells to compute. Defaults to R@1 and
            R@5 at IoU 0.3 and 0.5.
        label (str): Row label for the table.

    Returns:
        ~.evaluate.MetricsTable: Unrounded percentages in table order.

    Raises:
        ~.exceptions.QueryIdMismatchError: If ``results`` holds ids that
            are not annotated; every such id is listed.
    """
    spec = validate_metric_spec(spec or default_metric_spec())
    truth = {
        ann.query.query_id: ann.ground_truth
        for _, ann in annotations_io.iter_annotations(annotations)
    }
    unknown = set(results) - set(truth)
    if unknown:
        raise exceptions.QueryIdMismatchError(unknown)

    missing = len(truth) - len(results)
    if missing:
        _LOGGER.info("evaluate.missing_predictions", extra={"count": missing})

    cells = table_order(spec)
    hits = [0] * len(cells)
    for query_id, gt in truth.items():
        preds = results.get(query_id, ())
        # The first rank hitting at m decides every n for that m.
        first = {m: _best_rank(preds, gt, m) for m in spec.iou_thresholds}
        for index, (n, m) in enumerate(cells):
            if first[m] is not None and first[m] <= n:
                hits[index] += 1

    count = len(truth)
    return evaluate.MetricsTable(
        label=label,
        query_count=count,
        cells=[
            evaluate.MetricCell(
                n=n, iou=m, recall_pct=100.0 * h / count if count else 0.0
            )
            for (n, m), h in zip(cells, hits)
        ],
    )


def recall(table: evaluate.MetricsTable, n: int, m: float) -> float:
    """The unrounded percentage of cell (n, m).

    Raises:
        KeyError: If the table has no such cell.
    """
    for cell in table.cells:
        if cell.n == n and abs(cell.iou - m) < 1e-12:
            return cell.recall_pct
    raise KeyError((n, m))


def round_pct(value: float) -> decimal.Decimal:
    """``value`` rounded half-up to two decimals.

    >>> str(round_pct(12.125)), str(round_pct(2.0))
    ('12.13', '2.00')
    """
    return decimal.Decimal(repr(float(value))).quantize(
        _CENT, rounding=decimal.ROUND_HALF_UP
    )


def spec_of(table: evaluate.MetricsTable) -> evaluate.MetricSpec:
    """Recover the metric spec a table was computed with."""
    ranks: List[int] = []
    thresholds: List[float] = []
    for cell in table.cells:
        if cell.n not in ranks:
            ranks.append(cell.n)
        if cell.iou not in thresholds:
            thresholds.append(cell.iou)
    return evaluate.MetricSpec(ranks=ranks, iou_thresholds=thresholds)
