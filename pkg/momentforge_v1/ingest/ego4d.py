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

"""Import of Ego4D NLQ annotation files.

The official NLQ JSON nests ``videos → clips → annotations →
language_queries``. Each clip becomes one annotated clip, each language
query with text becomes one query whose moment is the clip-relative
``clip_start_sec``/``clip_end_sec`` span.
"""

import collections
import json
import logging
import math
from typing import Any, Dict, List, Mapping

from momentforge_v1 import exceptions
from momentforge_v1.ingest import annotations as annotations_io
from momentforge_v1.services.reformulator import prompts
from momentforge_v1.types import core
from momentforge_v1.types import ingest

_LOGGER = logging.getLogger(__name__)


def _number(value: Any) -> bool:
    return (
        isinstance(value, (int, float))
        and not isinstance(value, bool)
        and math.isfinite(value)
    )


def _records(payload: Any, key: str) -> List[Mapping]:
    values = payload.get(key) if isinstance(payload, Mapping) else None
    if not isinstance(values, list):
        return []
    return [v for v in values if isinstance(v, Mapping)]


def _template_name(line: Any):
    if not isinstance(line, str):
        return None
    template = prompts.template_from_line(line)
    return None if template is None else core.TemplateId(template).name


def _moment(query: Mapping, duration: float, query_id: str):
    start, end = query.get("clip_start_sec"), query.get("clip_end_sec")
    if not (_number(start) and _number(end)):
        _LOGGER.warning("ingest.ego4d.no_moment", extra={"query_id": query_id})
        return None
    clamped = (min(max(start, 0.0), duration), min(max(end, 0.0), duration))
    if clamped != (start, end):
        _LOGGER.warning(
            "ingest.ego4d.clamped",
            extra={"query_id": query_id, "moment": (start, end), "duration": duration},
        )
    if clamped[0] > clamped[1]:
        _LOGGER.warning("ingest.ego4d.inverted", extra={"query_id": query_id})
        return None
    return clamped


def ego4d_to_dict(payload: Any) -> Dict[str, Any]:
    """Convert a decoded NLQ document to the annotation file layout.

    Queries without text or without a usable moment are skipped. Query ids
    are ``<annotation_uid>_<index>``, the index counting the annotation's
    language queries.

    Raises:
        ~.exceptions.AnnotationFormatError: If the document has no
            ``videos`` list.
    """
    if isinstance(payload, Mapping) and isinstance(payload.get("videos"), list):
        videos = _records(payload, "videos")
    elif isinstance(payload, list):
        videos = [v for v in payload if isinstance(v, Mapping)]
    else:
        raise exceptions.AnnotationFormatError(
            "Ego4D NLQ document must hold a 'videos' list"
        )

    clips: Dict[str, Dict[str, Any]] = collections.OrderedDict()
    skipped = 0
    for video in videos:
        for clip in _records(video, "clips"):
            clip_id = clip.get("clip_uid")
            start, end = clip.get("clip_start_sec"), clip.get("clip_end_sec")
            if not isinstance(clip_id, str) or not (_number(start) and _number(end)):
                _LOGGER.warning(
                    "ingest.ego4d.bad_clip", extra={"video_uid": video.get("video_uid")}
                )
                continue
            duration = float(end) - float(start)
            if duration <= 0:
                _LOGGER.warning("ingest.ego4d.empty_clip", extra={"clip_id": clip_id})
                continue
            entry = clips.setdefault(
                clip_id, {"clip_id": clip_id, "duration_s": duration, "queries": []}
            )
            for annotation in _records(clip, "annotations"):
                annotation_uid = annotation.get("annotation_uid") or clip_id
                for index, query in enumerate(_records(annotation, "language_queries")):
                    query_id = "{}_{}".format(annotation_uid, index)
                    text = query.get("query")
                    if not isinstance(text, str) or not text.split():
                        skipped += 1
                        continue
                    moment = _moment(query, duration, query_id)
                    if moment is None:
                        skipped += 1
                        continue
                    entry["queries"].append(
                        {
                            "query_id": query_id,
                            "text": " ".join(text.split()),
                            "template": _template_name(query.get("template")),
                            "start_s": moment[0],
                            "end_s": moment[1],
                        }
                    )

    _LOGGER.info(
        "ingest.ego4d.converted",
        extra={
            "clips": len(clips),
            "queries": sum(len(c["queries"]) for c in clips.values()),
            "skipped": skipped,
        },
    )
    return {"clips": list(clips.values())}


def load_ego4d(path: str) -> ingest.AnnotationSet:
    """Read an NLQ file and validate the converted annotations.

    Raises:
        ~.exceptions.AnnotationFormatError: If the file cannot be read or
            the converted annotations are invalid.
    """
    try:
        with open(path, encoding="utf-8") as fh:
            payload = json.load(fh)
    except (OSError, UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise exceptions.AnnotationFormatError(
            "{}: cannot read Ego4D NLQ file: {}".format(path, exc)
        ) from exc
    return annotations_io.annotations_from_dict(ego4d_to_dict(payload), source=path)
