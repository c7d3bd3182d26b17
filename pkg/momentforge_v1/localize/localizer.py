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

"""Moment localization over sliding windows.

Every window of a clip is split into segments and scored on its full
candidate map. Candidates from all windows are pooled, exact duplicates
are dropped, and greedy NMS picks the final ranking. Ranking is by
descending score, then earlier start, then shorter length, then window
index, so results do not depend on evaluation order.
"""

import logging
from typing import Iterable, List, NamedTuple, Optional, Sequence

import numpy as np  # type: ignore

from momentforge_v1 import intervals
from momentforge_v1.localize import candidates
from momentforge_v1.localize import embedding
from momentforge_v1.localize import scoring
from momentforge_v1.localize import windows as windows_lib
from momentforge_v1.types import core
from momentforge_v1.types import ingest
from momentforge_v1.types import localize
from momentforge_v1.types import reformulate

_LOGGER = logging.getLogger(__name__)

DEFAULT_NMS_THRESHOLD = 0.5


class _Span(NamedTuple):
    start: float
    end: float
    score: float
    window: int


def _rank_key(span: _Span):
    return (-span.score, span.start, span.end - span.start, span.window)


def _span_iou(a: _Span, b: _Span) -> float:
    inter = max(0.0, min(a.end, b.end) - max(a.start, b.start))
    union = (a.end - a.start) + (b.end - b.start) - inter
    if union <= 0.0:
        return 1.0 if (a.start == b.start and a.end == b.end) else 0.0
    return inter / union


def _dedupe(ranked: Iterable[_Span]) -> List[_Span]:
    seen = set()
    kept = []
    for span in ranked:
        if (span.start, span.end) not in seen:
            seen.add((span.start, span.end))
            kept.append(span)
    return kept


def _nms_spans(
    spans: Iterable[_Span], iou_threshold: float, max_keep: Optional[int] = None
) -> List[_Span]:
    kept: List[_Span] = []
    for span in sorted(spans, key=_rank_key):
        if max_keep is not None and len(kept) >= max_keep:
            break
        if all(_span_iou(span, other) <= iou_threshold for other in kept):
            kept.append(span)
    return kept


def _to_prediction(span: _Span, fallback: bool = False) -> localize.Prediction:
    return localize.Prediction(
        interval=core.TemporalInterval(start=span.start, end=span.end),
        score=span.score,
        source_window=span.window,
        fallback=fallback,
    )


def nms(
    preds: Sequence[localize.Prediction],
    iou_threshold: float,
    max_keep: Optional[int] = None,
) -> List[localize.Prediction]:
    """Greedy non-maximum suppression.

    Repeatedly keeps the best remaining prediction and drops every other
    prediction whose IoU with it exceeds ``iou_threshold``.

    Args:
        preds (Sequence[~.localize.Prediction]): Predictions in any order.
        iou_threshold (float): Suppression threshold in ``[0, 1]``.
        max_keep (Optional[int]): Stop after this many predictions.

    Returns:
        Sequence[~.localize.Prediction]: Kept predictions, best first.
    """
    if not 0.0 <= iou_threshold <= 1.0:
        raise ValueError(
            "iou_threshold must be in [0, 1], got {}".format(iou_threshold)
        )
    spans = [
        _Span(p.interval.start, p.interval.end, p.score, p.source_window) for p in preds
    ]
    order = sorted(range(len(spans)), key=lambda i: (_rank_key(spans[i]), i))
    kept: List[int] = []
    for i in order:
        if max_keep is not None and len(kept) >= max_keep:
            break
        if all(_span_iou(spans[i], spans[j]) <= iou_threshold for j in kept):
            kept.append(i)
    return [preds[i] for i in kept]


class CandidatePool:
    """Every candidate of every window of one clip, ready to score.

    Segment and candidate features are computed once, so scoring another
    query is a single matrix-vector product.

    Args:
        fm (~.ingest.FeatureMatrix): The clip's features.
        clip (~.core.ClipMeta): The clip.
        cfg (~.localize.WindowConfig): Window parameters.
        scorer (~.scoring.CandidateScorer): Defaults to cosine.
    """

    def __init__(
        self,
        fm: ingest.FeatureMatrix,
        clip: core.ClipMeta,
        cfg: localize.WindowConfig,
        scorer: scoring.CandidateScorer = None,
    ):
        self.clip = clip
        self.dim = fm.dim
        self.scorer = scorer or scoring.CosineScorer()
        k = cfg.segments_per_window
        cmap = candidates.build_candidate_map(k)
        rows, cols = candidates.valid_cells(cmap)

        starts, ends, window_ids, feats = [], [], [], []
        for index, window in enumerate(windows_lib.make_windows(clip.duration, cfg)):
            segs = candidates.segment_features(fm, window, k)
            span = window.end - window.start
            starts.append(window.start + rows * span / k)
            ends.append(window.start + (cols + 1) * span / k)
            window_ids.append(np.full(len(rows), index))
            feats.append(candidates.candidate_features(segs, cmap))

        self.starts = np.concatenate(starts)
        self.ends = np.minimum(np.concatenate(ends), clip.duration)
        self.window_ids = np.concatenate(window_ids)
        self.features = np.vstack(feats)

    def rank(self, query: np.ndarray) -> List[_Span]:
        """All candidates ranked for ``query``, exact duplicates removed."""
        scoring.check_dim(len(query), self.dim)
        scores = self.scorer.score_cells(self.features, query)
        spans = [
            _Span(float(s), float(e), float(v), int(w))
            for s, e, v, w in zip(self.starts, self.ends, scores, self.window_ids)
        ]
        return _dedupe(sorted(spans, key=_rank_key))


def _finish(
    ranked: Sequence[_Span], top_k: int, nms_threshold: float, fallback: bool = False
) -> List[localize.Prediction]:
    kept = _nms_spans(ranked, nms_threshold, max_keep=top_k)
    return [_to_prediction(span, fallback) for span in kept]


def localize_single(
    fm: ingest.FeatureMatrix,
    clip: core.ClipMeta,
    q: localize.QueryEmbedding,
    cfg: localize.WindowConfig,
    top_k: int,
    *,
    nms_threshold: float = DEFAULT_NMS_THRESHOLD,
    scorer: scoring.CandidateScorer = None,
    pool: CandidatePool = None,
) -> List[localize.Prediction]:
    """Rank a clip's moments for one query embedding.

    Args:
        fm (~.ingest.FeatureMatrix): The clip's features.
        clip (~.core.ClipMeta): The clip.
        q (~.localize.QueryEmbedding): The query.
        cfg (~.localize.WindowConfig): Window parameters.
        top_k (int): Maximum number of predictions.
        nms_threshold (float): NMS IoU threshold.
        scorer (~.scoring.CandidateScorer): Defaults to cosine.
        pool (CandidatePool): A prebuilt pool for ``fm``, reused across
            queries.

    Returns:
        Sequence[~.localize.Prediction]: At most ``top_k`` predictions,
        best first.

    Raises:
        ~.exceptions.DimensionMismatchError: If ``q.dim`` differs from
            ``fm.dim``.
    """
    if top_k < 1:
        raise ValueError("top_k must be at least 1, got {}".format(top_k))
    scoring.check_dim(q.dim, fm.dim)
    pool = pool or CandidatePool(fm, clip, cfg, scorer)
    return _finish(pool.rank(embedding.as_array(q)), top_k, nms_threshold)


def _satisfies(span: _Span, relation: reformulate.Relation, anchor: _Span) -> bool:
    if relation == reformulate.Relation.AFTER:
        return span.start >= anchor.end
    if relation == reformulate.Relation.BEFORE:
        return span.end <= anchor.start
    return True


def localize_stepwise(
    fm: ingest.FeatureMatrix,
    clip: core.ClipMeta,
    steps: reformulate.InstructionSequence,
    cfg: localize.WindowConfig,
    top_k: int,
    *,
    dim: int = None,
    seed: int = 0,
    nms_threshold: float = DEFAULT_NMS_THRESHOLD,
    scorer: scoring.CandidateScorer = None,
    pool: CandidatePool = None,
) -> List[localize.Prediction]:
    """Localize an instruction sequence one step at a time.

    Each step's best moment anchors the next step: a step related
    ``AFTER`` only considers candidates starting at or after the anchor's
    end, a step related ``BEFORE`` only candidates ending at or before the
    anchor's start. When that leaves nothing, the step falls back to its
    unconstrained ranking and the returned predictions are flagged.

    Args:
        steps (~.reformulate.InstructionSequence): Parsed instructions.
        dim (int): Text embedding size. Defaults to ``fm.dim``.
        seed (int): Text embedding hash seed.

    Returns:
        Sequence[~.localize.Prediction]: The last step's top ``top_k``.
    """
    dim = fm.dim if dim is None else dim
    if len(steps.steps) == 1:
        return localize_single(
            fm,
            clip,
            embedding.embed_text(steps.steps[0].description, dim, seed),
            cfg,
            top_k,
            nms_threshold=nms_threshold,
            scorer=scorer,
            pool=pool,
        )

    if top_k < 1:
        raise ValueError("top_k must be at least 1, got {}".format(top_k))
    scoring.check_dim(dim, fm.dim)
    pool = pool or CandidatePool(fm, clip, cfg, scorer)

    anchor = None
    fallback = False
    ranked: List[_Span] = []
    for index, step in enumerate(steps.steps):
        ranked = pool.rank(embedding.embed_vector(step.description, dim, seed))
        if anchor is not None and step.relation != reformulate.Relation.NONE:
            constrained = [s for s in ranked if _satisfies(s, step.relation, anchor)]
            if constrained:
                ranked = constrained
            else:
                fallback = True
                _LOGGER.info(
                    "localize.stepwise.fallback",
                    extra={
                        "clip_id": clip.clip_id,
                        "step": index,
                        "relation": reformulate.Relation(step.relation).name,
                        "anchor": (anchor.start, anchor.end),
                    },
                )
        if ranked:
            anchor = ranked[0]

    return _finish(ranked, top_k, nms_threshold, fallback)


def concatenated_description(steps: reformulate.InstructionSequence) -> str:
    """All step descriptions joined into one sentence."""
    return " ".join(step.description for step in steps.steps)


def within_clip(pred: localize.Prediction, clip: core.ClipMeta) -> bool:
    return intervals.contains(
        core.TemporalInterval(start=0.0, end=clip.duration), pred.interval
    )
