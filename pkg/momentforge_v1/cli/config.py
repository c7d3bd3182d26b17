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

"""Run configuration.

Settings come from three layers: built-in defaults, an optional config
file and command-line flags, later layers winning. A config file is UTF-8
text with one ``key = value`` per line; ``#`` starts a comment. Keys are
the long option names, with dashes or underscores::

    annotations = data/annotations.json
    features-dir = data/features
    window_s = 40
    ranks = 1, 5
    live = false
"""

from typing import Any, Callable, Dict, List, Mapping, Optional

from momentforge_v1 import exceptions
from momentforge_v1.evaluate import metrics
from momentforge_v1.localize import windows
from momentforge_v1.services.reformulator import prompts
from momentforge_v1.types import config
from momentforge_v1.types import evaluate
from momentforge_v1.types import localize

_TRUE = {"1", "true", "yes", "on"}
_FALSE = {"0", "false", "no", "off"}


def _bool(text: str) -> bool:
    lowered = text.lower()
    if lowered in _TRUE:
        return True
    if lowered in _FALSE:
        return False
    raise ValueError("not a boolean: {!r}".format(text))


def _list_of(kind: Callable[[str], Any]) -> Callable[[str], List[Any]]:
    def parse(text: str) -> List[Any]:
        return [kind(item) for item in text.split(",") if item.strip()]

    return parse


PARSERS: Dict[str, Callable[[str], Any]] = {
    "annotations": str,
    "features_dir": str,
    "cache_dir": str,
    "out": str,
    "corpus": str,
    "window_s": float,
    "stride_s": float,
    "segments": int,
    "ranks": _list_of(int),
    "ious": _list_of(float),
    "dim": int,
    "seed": int,
    "live": _bool,
    "top_k": int,
    "nms": float,
    "model": str,
    "temperature": float,
    "workers": int,
    "label": str,
}

DEFAULTS: Dict[str, Any] = {
    "annotations": "",
    "features_dir": "",
    "cache_dir": "",
    "out": "",
    "corpus": "",
    "window_s": windows.DEFAULT_WINDOW_SECONDS,
    "stride_s": windows.DEFAULT_STRIDE_SECONDS,
    "segments": windows.DEFAULT_SEGMENTS,
    "ranks": list(metrics.DEFAULT_RANKS),
    "ious": list(metrics.DEFAULT_IOU_THRESHOLDS),
    "dim": 256,
    "seed": 0,
    "live": False,
    "top_k": 5,
    "nms": 0.5,
    "model": prompts.DEFAULT_MODEL,
    "temperature": prompts.DEFAULT_TEMPERATURE,
    "workers": 1,
    "label": "",
}


def parse_config_text(text: str, source: str = "<config>") -> Dict[str, Any]:
    """Parse ``key = value`` lines.

    Raises:
        ~.exceptions.ConfigError: On a line without ``=``, an unknown key
            or a value that does not parse; the line number is named.
    """
    values: Dict[str, Any] = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise exceptions.ConfigError(
                "{}:{}: expected 'key = value', got {!r}".format(source, number, raw)
            )
        key = key.strip().replace("-", "_")
        if key not in PARSERS:
            raise exceptions.ConfigError(
                "{}:{}: unknown key {!r}".format(source, number, key)
            )
        try:
            values[key] = PARSERS[key](value.strip())
        except ValueError as exc:
            raise exceptions.ConfigError(
                "{}:{}: bad value for {!r}: {}".format(source, number, key, exc)
            ) from exc
    return values


def load_config_file(path: str) -> Dict[str, Any]:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except (OSError, UnicodeDecodeError) as exc:
        raise exceptions.ConfigError(
            "cannot read config file {}: {}".format(path, exc)
        ) from exc
    return parse_config_text(text, source=path)


def _check(condition: bool, message: str) -> None:
    if not condition:
        raise exceptions.ConfigError(message)


def build_run_config(
    file_values: Optional[Mapping[str, Any]] = None,
    flag_values: Optional[Mapping[str, Any]] = None,
) -> config.RunConfig:
    """Merge defaults, config-file values and flags into a RunConfig.

    Flags that are ``None`` were not given and do not override.

    Raises:
        ~.exceptions.ValidationError: If a merged value violates its
            module's contract.
    """
    merged = dict(DEFAULTS)
    merged.update(file_values or {})
    merged.update({k: v for k, v in (flag_values or {}).items() if v is not None})

    window = localize.WindowConfig(
        window_seconds=merged["window_s"],
        stride_seconds=merged["stride_s"],
        segments_per_window=merged["segments"],
    )
    windows.validate_window_config(window)
    metric_spec = metrics.validate_metric_spec(
        evaluate.MetricSpec(ranks=merged["ranks"], iou_thresholds=merged["ious"])
    )
    _check(merged["dim"] > 0, "dim must be positive")
    _check(merged["top_k"] >= 1, "top_k must be at least 1")
    _check(0.0 <= merged["nms"] <= 1.0, "nms must be in [0, 1]")
    _check(merged["workers"] >= 1, "workers must be at least 1")
    _check(0.0 <= merged["temperature"] <= 2.0, "temperature must be in [0, 2]")

    return config.RunConfig(
        annotations=merged["annotations"],
        features_dir=merged["features_dir"],
        cache_dir=merged["cache_dir"],
        out=merged["out"],
        corpus=merged["corpus"],
        window=window,
        metric_spec=metric_spec,
        dim=merged["dim"],
        seed=merged["seed"],
        live=merged["live"],
        top_k=merged["top_k"],
        nms_threshold=merged["nms"],
        model=merged["model"],
        temperature=merged["temperature"],
        workers=merged["workers"],
        label=merged["label"],
    )
