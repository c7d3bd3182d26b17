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

"""Annotation files.

An annotation file is UTF-8 JSON::

    {"clips": [{"clip_id": str, "duration_s": number,
                "queries": [{"query_id": str, "text": str,
                             "template": str | null,
                             "start_s": number, "end_s": number}]}]}

``template`` is a :class:`~.core.TemplateId` name.
"""

import json
import logging
import math
from typing import Any, Dict, Iterator, Mapping, Tuple

from momentforge_v1 import exceptions
from momentforge_v1.types import core
from momentforge_v1.types import ingest

_LOGGER = logging.getLogger(__name__)


def _is_number(value: Any) -> bool:
    return (
        isinstance(value, (int, float))
        and not isinstance(value, bool)
        and math.isfinite(value)
    )


def _template_from_name(name: Any, where: str) -> core.TemplateId:
    if name is None:
        return core.TemplateId.TEMPLATE_ID_UNSPECIFIED
    if not isinstance(name, str) or name not in core.TemplateId.__members__:
        raise exceptions.AnnotationFormatError(
            "{}: unknown template {!r}".format(where, name)
        )
    return core.TemplateId[name]


def _parse_query(
    record: Any, clip: core.ClipMeta, where: str
) -> core.Annotation:
    if not isinstance(record, Mapping):
        raise exceptions.AnnotationFormatError(
            "{}: query is not an object".format(where)
        )

    query_id = record.get("query_id")
    if not isinstance(query_id, str) or not query_id:
        raise exceptions.AnnotationFormatError("{}: missing query_id".format(where))
    where = "{} query {!r}".format(where, query_id)

    text = record.get("text")
    if not isinstance(text, str) or not text.split():
        raise exceptions.AnnotationFormatError("{}: empty query text".format(where))

    start, end = record.get("start_s"), record.get("end_s")
    if not (_is_number(start) and _is_number(end)):
        raise exceptions.AnnotationFormatError(
            "{}: start_s and end_s must be finite numbers".format(where)
        )
    if start > end:
        raise exceptions.AnnotationFormatError(
            "{}: start_s {} after end_s {}".format(where, start, end)
        )
    if start < 0 or end > clip.duration:
        raise exceptions.AnnotationFormatError(
            "{}: moment [{}, {}] outside clip [0, {}]".format(
                where, start, end, clip.duration
            )
        )

    return core.Annotation(
        query=core.Query(
            query_id=query_id,
            text=text,
            template_hint=_template_from_name(record.get("template"), where),
        ),
        ground_truth=core.TemporalInterval(start=float(start), end=float(end)),
    )


def annotations_from_dict(
    payload: Any, source: str = "<annotations>"
) -> ingest.AnnotationSet:
    """Validate a decoded annotation document.

    Raises:
        ~.exceptions.AnnotationFormatError: Naming the offending record.
    """
    if not isinstance(payload, Mapping) or not isinstance(payload.get("clips"), list):
        raise exceptions.AnnotationFormatError(
            "{}: top level must be an object with a 'clips' list".format(source)
        )

    clips = []
    seen_clips = set()
    seen_queries = set()
    for index, record in enumerate(payload["clips"]):
        where = "{}: clip #{}".format(source, index)
        if not isinstance(record, Mapping):
            raise exceptions.AnnotationFormatError("{} is not an object".format(where))

        clip_id = record.get("clip_id")
        if not isinstance(clip_id, str) or not clip_id:
            raise exceptions.AnnotationFormatError("{}: missing clip_id".format(where))
        where = "{}: clip {!r}".format(source, clip_id)
        if clip_id in seen_clips:
            raise exceptions.AnnotationFormatError(
                "{}: duplicate clip_id".format(where)
            )
        seen_clips.add(clip_id)

        duration = record.get("duration_s")
        if not _is_number(duration) or duration <= 0:
            raise exceptions.AnnotationFormatError(
                "{}: duration_s must be a positive number".format(where)
            )
        clip = core.ClipMeta(clip_id=clip_id, duration=float(duration))

        queries = record.get("queries", [])
        if not isinstance(queries, list):
            raise exceptions.AnnotationFormatError(
                "{}: 'queries' is not a list".format(where)
            )

        annotations = []
        for query in queries:
            annotation = _parse_query(query, clip, where)
            if annotation.query.query_id in seen_queries:
                raise exceptions.AnnotationFormatError(
                    "{}: duplicate query_id {!r}".format(
                        where, annotation.query.query_id
                    )
                )
            seen_queries.add(annotation.query.query_id)
            annotations.append(annotation)

        clips.append(ingest.ClipAnnotations(clip=clip, annotations=annotations))

    return ingest.AnnotationSet(clips=clips)


def load_annotations(path: str) -> ingest.AnnotationSet:
    """Load and validate an annotation file.

    Args:
        path (str): Path to the JSON file.

    Returns:
        ~.ingest.AnnotationSet: The validated annotations.

    Raises:
        ~.exceptions.AnnotationFormatError: If the file is not valid JSON
            or a record violates the schema. The message names the record.
    """
    try:
        with open(path, encoding="utf-8") as fh:
            payload = json.load(fh)
    except (OSError, UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise exceptions.AnnotationFormatError("{}: {}".format(path, exc)) from exc

    annotation_set = annotations_from_dict(payload, source=path)
    _LOGGER.info(
        "ingest.annotations.loaded",
        extra={
            "path": path,
            "clips": len(annotation_set.clips),
            "queries": sum(len(c.annotations) for c in annotation_set.clips),
        },
    )
    return annotation_set


def annotations_to_dict(annotation_set: ingest.AnnotationSet) -> Dict[str, Any]:
    clips = []
    for entry in annotation_set.clips:
        queries = []
        for annotation in entry.annotations:
            template = annotation.query.template_hint
            queries.append(
                {
                    "query_id": annotation.query.query_id,
                    "text": annotation.query.text,
                    "template": None
                    if template == core.TemplateId.TEMPLATE_ID_UNSPECIFIED
                    else core.TemplateId(template).name,
                    "start_s": annotation.ground_truth.start,
                    "end_s": annotation.ground_truth.end,
                }
            )
        clips.append(
            {
                "clip_id": entry.clip.clip_id,
                "duration_s": entry.clip.duration,
                "queries": queries,
            }
        )
    return {"clips": clips}


def save_annotations(annotation_set: ingest.AnnotationSet, path: str) -> None:
    try:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(annotations_to_dict(annotation_set), fh, indent=2)
            fh.write("\n")
    except OSError as exc:
        raise exceptions.OutputWriteError(path, exc) from exc


def iter_annotations(
    annotation_set: ingest.AnnotationSet,
) -> Iterator[Tuple[core.ClipMeta, core.Annotation]]:
    """Yield ``(clip, annotation)`` pairs in file order."""
    for entry in annotation_set.clips:
        for annotation in entry.annotations:
            yield entry.clip, annotation


def query_index(
    annotation_set: ingest.AnnotationSet,
) -> Dict[str, Tuple[core.ClipMeta, core.Annotation]]:
    return {a.query.query_id: (c, a) for c, a in iter_annotations(annotation_set)}
