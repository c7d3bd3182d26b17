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

"""JSON artifacts passed between command-line stages.

Every writer orders its records by query id and emits two-space indented
JSON with a trailing newline, so unchanged inputs give identical files.
"""

import json
import os
from typing import Any, Dict, List, Mapping, Sequence, Tuple

from momentforge_v1 import exceptions
from momentforge_v1.evaluate import metrics
from momentforge_v1.types import core
from momentforge_v1.types import evaluate
from momentforge_v1.types import localize
from momentforge_v1.types import reformulate

CorpusEntry = Tuple[reformulate.ReformulatedQuery, reformulate.InstructionSequence]

_SOURCES = {
    reformulate.CompletionSource.LIVE: "live",
    reformulate.CompletionSource.MOCK: "mock",
    reformulate.CompletionSource.CACHE: "cache",
}


def write_json(payload: Any, path: str) -> None:
    """Write ``payload`` as indented UTF-8 JSON.

    Raises:
        ~.exceptions.OutputWriteError: If the file or its directory cannot
            be written.
    """
    try:
        parent = os.path.dirname(path)
        if parent:
            os.makedirs(parent, exist_ok=True)
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2, ensure_ascii=False)
            fh.write("\n")
    except OSError as exc:
        raise exceptions.OutputWriteError(path, exc) from exc


def write_text(text: str, path: str) -> None:
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise exceptions.OutputWriteError(path, exc) from exc


def read_json(path: str, what: str) -> Any:
    """Decode a JSON file.

    Raises:
        ~.exceptions.ValidationError: If the file cannot be read or parsed.
    """
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise exceptions.ValidationError(
            "{}: cannot read {}: {}".format(path, what, exc)
        ) from exc


def _field(record: Any, key: str, kind, path: str, what: str):
    value = record.get(key) if isinstance(record, Mapping) else None
    if isinstance(value, bool) and kind is not bool:
        value = None
    if not isinstance(value, kind):
        raise exceptions.ValidationError(
            "{}: {} record without a valid {!r}: {!r}".format(path, what, key, record)
        )
    return value


# Predictions


def predictions_to_records(
    results: Mapping[str, Sequence[localize.Prediction]]
) -> List[Dict[str, Any]]:
    records = []
    for query_id in sorted(results):
        for rank, pred in enumerate(results[query_id], start=1):
            records.append(
                {
                    "query_id": query_id,
                    "rank": rank,
                    "start_s": pred.interval.start,
                    "end_s": pred.interval.end,
                    "score": pred.score,
                    "fallback": pred.fallback,
                }
            )
    return records


def save_predictions(
    results: Mapping[str, Sequence[localize.Prediction]], path: str
) -> None:
    write_json(predictions_to_records(results), path)


def load_predictions(path: str) -> Dict[str, List[localize.Prediction]]:
    """Read a prediction dump into ranked predictions per query id."""
    payload = read_json(path, "predictions")
    if not isinstance(payload, list):
        raise exceptions.ValidationError("{}: predictions must be a list".format(path))
    ranked: Dict[str, List[Tuple[int, localize.Prediction]]] = {}
    for record in payload:
        query_id = _field(record, "query_id", str, path, "prediction")
        rank = _field(record, "rank", int, path, "prediction")
        start = _field(record, "start_s", (int, float), path, "prediction")
        end = _field(record, "end_s", (int, float), path, "prediction")
        score = _field(record, "score", (int, float), path, "prediction")
        pred = localize.Prediction(
            interval=core.TemporalInterval(start=start, end=end),
            score=score,
            fallback=bool(record.get("fallback", False)),
        )
        ranked.setdefault(query_id, []).append((rank, pred))
    return {
        query_id: [p for _, p in sorted(items, key=lambda item: item[0])]
        for query_id, items in ranked.items()
    }


# Reformulated corpus


def source_name(source: reformulate.CompletionSource) -> str:
    return _SOURCES.get(source, "unspecified")


def corpus_to_records(entries: Sequence[CorpusEntry]) -> List[Dict[str, Any]]:
    records = []
    for query, steps in sorted(entries, key=lambda e: e[0].query_id):
        records.append(
            {
                "query_id": query.query_id,
                "original": query.original_text,
                "reformulated": query.reformulated_text,
                "steps": [
                    {
                        "description": step.description,
                        "relation": reformulate.Relation(step.relation).name,
                    }
                    for step in steps.steps
                ],
                "source": source_name(query.source),
            }
        )
    return records


def save_corpus(entries: Sequence[CorpusEntry], path: str) -> None:
    write_json(corpus_to_records(entries), path)


def load_corpus(path: str) -> List[CorpusEntry]:
    """Read a reformulated corpus.

    Raises:
        ~.exceptions.ValidationError: On malformed records or unknown
            relation names.
    """
    payload = read_json(path, "reformulated corpus")
    if not isinstance(payload, list):
        raise exceptions.ValidationError(
            "{}: reformulated corpus must be a list".format(path)
        )
    by_name = {name: source for source, name in _SOURCES.items()}
    entries = []
    for record in payload:
        steps = []
        for step in _field(record, "steps", list, path, "corpus"):
            relation = _field(step, "relation", str, path, "step")
            if relation not in reformulate.Relation.__members__:
                raise exceptions.ValidationError(
                    "{}: unknown relation {!r}".format(path, relation)
                )
            steps.append(
                reformulate.InstructionStep(
                    description=_field(step, "description", str, path, "step"),
                    relation=reformulate.Relation[relation],
                )
            )
        if not steps:
            raise exceptions.ValidationError(
                "{}: corpus record without steps: {!r}".format(path, record)
            )
        query = reformulate.ReformulatedQuery(
            query_id=_field(record, "query_id", str, path, "corpus"),
            original_text=_field(record, "original", str, path, "corpus"),
            reformulated_text=_field(record, "reformulated", str, path, "corpus"),
            source=by_name.get(
                record.get("source"),
                reformulate.CompletionSource.COMPLETION_SOURCE_UNSPECIFIED,
            ),
        )
        entries.append((query, reformulate.InstructionSequence(steps=steps)))
    return entries


# Metrics and reports


def metrics_to_dict(table: evaluate.MetricsTable) -> Dict[str, Any]:
    return {
        "label": table.label,
        "query_count": table.query_count,
        "cells": [
            {
                "n": c.n,
                "iou": c.iou,
                "recall_pct": float(metrics.round_pct(c.recall_pct)),
            }
            for c in table.cells
        ],
    }


def save_metrics(table: evaluate.MetricsTable, path: str) -> None:
    write_json(metrics_to_dict(table), path)


def load_metrics(path: str) -> evaluate.MetricsTable:
    payload = read_json(path, "metrics")
    cells = []
    for cell in _field(payload, "cells", list, path, "metrics"):
        cells.append(
            evaluate.MetricCell(
                n=_field(cell, "n", int, path, "cell"),
                iou=_field(cell, "iou", (int, float), path, "cell"),
                recall_pct=_field(cell, "recall_pct", (int, float), path, "cell"),
            )
        )
    return evaluate.MetricsTable(
        label=payload.get("label") or "",
        query_count=_field(payload, "query_count", int, path, "metrics"),
        cells=cells,
    )


def report_to_dict(report: evaluate.ComparisonReport) -> Dict[str, Any]:
    return {
        "base_label": report.base_label,
        "other_label": report.other_label,
        "query_count": report.query_count,
        "columns": [
            {
                "n": c.n,
                "iou": c.iou,
                "base_pct": c.base_pct,
                "other_pct": c.other_pct,
                "delta_pct": c.delta_pct,
            }
            for c in report.columns
        ],
    }


def stats_to_dict(stats: evaluate.CorpusStats) -> Dict[str, Any]:
    return {
        "query_count": stats.query_count,
        "mean_words_original": stats.mean_words_original,
        "mean_words_reformulated": stats.mean_words_reformulated,
        "mean_steps": stats.mean_steps,
        "template_counts": dict(sorted(stats.template_counts.items())),
    }


# Training windows


def windows_to_dict(
    windows: Mapping[str, Sequence[core.TemporalInterval]]
) -> Dict[str, List[List[float]]]:
    return {
        query_id: [[w.start, w.end] for w in windows[query_id]]
        for query_id in sorted(windows)
    }
