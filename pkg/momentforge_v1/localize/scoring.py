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

"""Candidate scoring.

Scorers rate every candidate of a window against a query embedding. The
cosine baseline compares mean-pooled candidate features to the query; a
learned scorer can replace it by implementing :class:`CandidateScorer`.
"""

import abc

import numpy as np  # type: ignore

from momentforge_v1 import exceptions
from momentforge_v1.localize import candidates
from momentforge_v1.localize import embedding
from momentforge_v1.types import localize


class CandidateScorer(abc.ABC):
    """Abstract candidate scorer."""

    @abc.abstractmethod
    def score_cells(self, cell_features: np.ndarray, query: np.ndarray) -> np.ndarray:
        """Score candidates.

        Args:
            cell_features (numpy.ndarray): ``N x D`` candidate features.
            query (numpy.ndarray): Length-``D`` query embedding.

        Returns:
            numpy.ndarray: ``N`` finite scores; higher is better.
        """
        raise NotImplementedError()


class CosineScorer(CandidateScorer):
    """Cosine similarity; zero when either vector is zero."""

    def score_cells(self, cell_features: np.ndarray, query: np.ndarray) -> np.ndarray:
        norms = np.linalg.norm(cell_features, axis=1) * np.linalg.norm(query)
        dots = cell_features @ query
        scores = np.zeros(len(cell_features), dtype=np.float64)
        np.divide(dots, norms, out=scores, where=norms > 0)
        return scores


def check_dim(query_dim: int, feature_dim: int) -> None:
    if query_dim != feature_dim:
        raise exceptions.DimensionMismatchError(
            "query embedding has dim {}, features have dim {}".format(
                query_dim, feature_dim
            )
        )


def score_candidates(
    segs: np.ndarray,
    cmap: localize.CandidateMap,
    q: localize.QueryEmbedding,
    scorer: CandidateScorer = None,
) -> localize.ScoreMap:
    """Score every valid cell of a candidate map.

    Args:
        segs (numpy.ndarray): ``k x D`` segment features of one window.
        cmap (~.localize.CandidateMap): The window's candidate map.
        q (~.localize.QueryEmbedding): The query.
        scorer (CandidateScorer): Defaults to :class:`CosineScorer`.

    Returns:
        ~.localize.ScoreMap: One score per valid cell, row-major.

    Raises:
        ~.exceptions.DimensionMismatchError: If ``q.dim`` differs from the
            feature dimension.
    """
    check_dim(q.dim, segs.shape[1])
    scorer = scorer or CosineScorer()
    scores = scorer.score_cells(
        candidates.candidate_features(segs, cmap), embedding.as_array(q)
    )
    return localize.ScoreMap(candidate_map=cmap, scores=scores.tolist())
