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

"""The ``momentforge`` command.

Every stage reads and writes files, so stages can be rerun and tested on
their own::

    momentforge synth --out data
    momentforge reformulate --annotations data/annotations.json \
        --cache-dir cache --out corpus.json
    momentforge localize --annotations data/annotations.json \
        --features-dir data/features --corpus corpus.json --out steps.json
    momentforge evaluate --annotations data/annotations.json \
        --predictions steps.json --label step-wise --out steps.metrics.json
    momentforge compare base.metrics.json steps.metrics.json --out report.txt

Exit status is 0 on success, 2 on invalid input and 3 when the chat
endpoint fails.
"""

import argparse
import collections
from concurrent import futures
import logging
import os
import sys
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from google.api_core import exceptions as core_exceptions  # type: ignore
import requests

from momentforge_v1 import artifacts
from momentforge_v1 import exceptions
from momentforge_v1.cli import config as config_lib
from momentforge_v1.evaluate import metrics
from momentforge_v1.evaluate import report as report_lib
from momentforge_v1.evaluate import stats as stats_lib
from momentforge_v1.ingest import annotations as annotations_io
from momentforge_v1.ingest import ego4d
from momentforge_v1.ingest import features as features_io
from momentforge_v1.ingest import synth
from momentforge_v1.ingest import training
from momentforge_v1.localize import embedding
from momentforge_v1.localize import localizer
from momentforge_v1.services.reformulator import cache as cache_lib
from momentforge_v1.services.reformulator import client as client_lib
from momentforge_v1.services.reformulator import parser as parser_lib
from momentforge_v1.types import config
from momentforge_v1.types import ingest
from momentforge_v1.types import localize
from momentforge_v1.types import reformulate

_LOGGER = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_TRANSPORT = 3

_SETTINGS = tuple(config_lib.PARSERS)


def _require(value: str, flag: str) -> str:
    if not value:
        raise exceptions.ConfigError("{} is required".format(flag))
    return value


def _load_annotations(cfg: config.RunConfig) -> ingest.AnnotationSet:
    return annotations_io.load_annotations(_require(cfg.annotations, "--annotations"))


def _emit(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


# synth


def cmd_synth(cfg: config.RunConfig, spec: ingest.SynthSpec) -> synth.SynthCorpus:
    """Generate a synthetic corpus into ``cfg.out``."""
    out = _require(cfg.out, "--out")
    corpus = synth.synth_corpus(spec)
    synth.write_corpus(corpus, out)
    _emit(
        "wrote {} clips and {} queries to {}".format(
            len(corpus.annotations.clips), len(corpus.oracle), out
        )
    )
    return corpus


# reformulate


def make_client(cfg: config.RunConfig) -> client_lib.ReformulatorClient:
    try:
        return client_lib.ReformulatorClient(transport="live" if cfg.live else "mock")
    except ValueError as exc:
        raise exceptions.ConfigError(str(exc)) from exc


def cmd_reformulate(
    cfg: config.RunConfig, client: client_lib.ReformulatorClient = None
) -> List[artifacts.CorpusEntry]:
    """Reformulate every annotated query and write the corpus."""
    out = _require(cfg.out, "--out")
    annotation_set = _load_annotations(cfg)
    client = client or make_client(cfg)
    cache = cache_lib.CompletionCache(cfg.cache_dir) if cfg.cache_dir else None
    queries = [a.query for _, a in annotations_io.iter_annotations(annotation_set)]

    def one(query) -> artifacts.CorpusEntry:
        reformulated = client_lib.reformulate(
            query, client, cache, model_hint=cfg.model, temperature=cfg.temperature
        )
        steps = parser_lib.parse_instructions(reformulated.reformulated_text)
        return reformulated, steps

    if cfg.workers > 1:
        with futures.ThreadPoolExecutor(max_workers=cfg.workers) as pool:
            entries = list(pool.map(one, queries))
    else:
        entries = [one(query) for query in queries]

    artifacts.save_corpus(entries, out)

    templates = collections.Counter(stats_lib.template_name(q.text) for q in queries)
    lines = ["reformulated {} queries ({})".format(len(entries), client.transport.host)]
    lines.extend(
        "  {:<28} {}".format(name, count) for name, count in sorted(templates.items())
    )
    hits = sum(1 for r, _ in entries if r.source == reformulate.CompletionSource.CACHE)
    rate = 100.0 * hits / len(entries) if entries else 0.0
    lines.append(
        "cache hit rate: {}/{} ({}%)".format(
            hits, len(entries), metrics.round_pct(rate)
        )
    )
    _emit("\n".join(lines))
    return entries


# localize


def cmd_localize(
    cfg: config.RunConfig, flat: bool = False
) -> Dict[str, List[localize.Prediction]]:
    """Localize every annotated query and write the prediction dump.

    Without ``cfg.corpus`` the original texts are used. With a corpus,
    each query is localized step by step, or, with ``flat``, as one
    embedding of the whole reformulation.
    """
    out = _require(cfg.out, "--out")
    annotation_set = _load_annotations(cfg)
    features_dir = _require(cfg.features_dir, "--features-dir")
    corpus = (
        {r.query_id: (r, s) for r, s in artifacts.load_corpus(cfg.corpus)}
        if cfg.corpus
        else None
    )

    results: Dict[str, List[localize.Prediction]] = {}
    for entry in annotation_set.clips:
        clip = entry.clip
        fm = features_io.load_clip_features(features_dir, clip.clip_id)
        features_io.check_duration(fm, clip.duration)
        pool = localizer.CandidatePool(fm, clip, cfg.window)
        for annotation in entry.annotations:
            query = annotation.query
            options = dict(nms_threshold=cfg.nms_threshold, pool=pool)
            reformulated = corpus.get(query.query_id) if corpus is not None else None
            if corpus is not None and reformulated is None:
                _LOGGER.warning(
                    "localize.corpus.missing_query", extra={"query_id": query.query_id}
                )
            if reformulated is None or flat:
                text = (
                    query.text
                    if reformulated is None
                    else reformulated[0].reformulated_text
                )
                results[query.query_id] = localizer.localize_single(
                    fm,
                    clip,
                    embedding.embed_text(text, cfg.dim, cfg.seed),
                    cfg.window,
                    cfg.top_k,
                    **options,
                )
            else:
                results[query.query_id] = localizer.localize_stepwise(
                    fm,
                    clip,
                    reformulated[1],
                    cfg.window,
                    cfg.top_k,
                    dim=cfg.dim,
                    seed=cfg.seed,
                    **options,
                )

    artifacts.save_predictions(results, out)
    fallbacks = sum(1 for preds in results.values() if preds and preds[0].fallback)
    _emit(
        "localized {} queries ({} with relaxed constraints)".format(
            len(results), fallbacks
        )
    )
    return results


# evaluate


def cmd_evaluate(cfg: config.RunConfig, predictions: str):
    """Score a prediction dump and write the metrics table."""
    annotation_set = _load_annotations(cfg)
    results = artifacts.load_predictions(_require(predictions, "--predictions"))
    label = cfg.label or os.path.splitext(os.path.basename(predictions))[0]
    table = metrics.aggregate(results, annotation_set, cfg.metric_spec, label=label)
    if cfg.out:
        artifacts.save_metrics(table, cfg.out)
    _emit(report_lib.metrics_table_text(table))
    return table


# compare


def report_paths(out: str) -> Tuple[str, str]:
    """The text report path and its JSON twin."""
    root, ext = os.path.splitext(out)
    if ext == ".json":
        return root + ".txt", out
    return out, root + ".json"


def cmd_compare(cfg: config.RunConfig, base: str, other: str):
    """Compare two metrics files in table layout."""
    report = report_lib.compare_report(
        artifacts.load_metrics(base), artifacts.load_metrics(other)
    )
    text = report_lib.render_table(report)
    if cfg.out:
        text_path, json_path = report_paths(cfg.out)
        artifacts.write_text(text, text_path)
        artifacts.write_json(artifacts.report_to_dict(report), json_path)
    _emit(text)
    return report


# stats


def cmd_stats(cfg: config.RunConfig):
    """Word statistics of a reformulated corpus."""
    entries = artifacts.load_corpus(_require(cfg.corpus, "--corpus"))
    corpus_stats = stats_lib.corpus_stats(entries)
    if cfg.out:
        artifacts.write_json(artifacts.stats_to_dict(corpus_stats), cfg.out)
    lines = [
        stats_lib.summary_line(corpus_stats),
        "mean steps {:.2f} over {} queries".format(
            corpus_stats.mean_steps, corpus_stats.query_count
        ),
    ]
    lines.extend(
        "  {:<28} {}".format(name, count)
        for name, count in sorted(corpus_stats.template_counts.items())
    )
    _emit("\n".join(lines))
    return corpus_stats


# windows


def cmd_windows(cfg: config.RunConfig):
    """Write the training windows of every annotated query."""
    out = _require(cfg.out, "--out")
    annotation_set = _load_annotations(cfg)
    selected = training.training_windows(annotation_set, cfg.window)
    artifacts.write_json(artifacts.windows_to_dict(selected), out)
    _emit(
        "selected {} training windows for {} queries".format(
            sum(len(w) for w in selected.values()), len(selected)
        )
    )
    return selected


# import-ego4d


def cmd_import_ego4d(cfg: config.RunConfig, nlq_path: str):
    """Convert an Ego4D NLQ file to the annotation format."""
    out = _require(cfg.out, "--out")
    annotation_set = ego4d.load_ego4d(nlq_path)
    annotations_io.save_annotations(annotation_set, out)
    _emit(
        "imported {} clips and {} queries".format(
            len(annotation_set.clips),
            sum(len(c.annotations) for c in annotation_set.clips),
        )
    )
    return annotation_set


# argument parsing


def _common_arguments() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key = value settings file")
    common.add_argument("--annotations", help="annotation JSON")
    common.add_argument("--features-dir", help="directory of <clip_id>.mlf files")
    common.add_argument("--cache-dir", help="completion cache directory")
    common.add_argument("--out", help="output path")
    client = common.add_mutually_exclusive_group()
    client.add_argument(
        "--live",
        dest="live",
        action="store_const",
        const=True,
        default=None,
        help="use the chat endpoint at MOMENTFORGE_API_URL",
    )
    client.add_argument(
        "--mock",
        dest="live",
        action="store_const",
        const=False,
        help="use the offline mock (default)",
    )
    common.add_argument("--window-s", type=float, help="window length (40)")
    common.add_argument("--stride-s", type=float, help="window stride (20)")
    common.add_argument("--segments", type=int, help="segments per window (16)")
    common.add_argument("--top-k", type=int, help="predictions per query (5)")
    common.add_argument("--nms", type=float, help="NMS IoU threshold (0.5)")
    common.add_argument("--dim", type=int, help="text embedding size (256)")
    common.add_argument("--seed", type=int, help="text embedding hash seed (0)")
    common.add_argument(
        "--ranks", type=config_lib.PARSERS["ranks"], help='ranks n ("1,5")'
    )
    common.add_argument(
        "--ious", type=config_lib.PARSERS["ious"], help='IoU thresholds m ("0.3,0.5")'
    )
    common.add_argument("--model", help="chat model name")
    common.add_argument("--temperature", type=float, help="sampling temperature")
    common.add_argument("--workers", type=int, help="concurrent reformulations")
    common.add_argument("--label", help="row label for metrics")
    common.add_argument(
        "-v", "--verbose", action="count", default=0, help="-v for info, -vv for debug"
    )
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_arguments()
    parser = argparse.ArgumentParser(
        prog="momentforge",
        description="Query reformulation and moment localization toolkit.",
    )
    commands = parser.add_subparsers(dest="command", metavar="COMMAND")
    commands.required = True

    sub = commands.add_parser(
        "synth", parents=[common], help="generate a synthetic corpus"
    )
    sub.add_argument("--num-clips", type=int)
    sub.add_argument("--clip-duration", type=float)
    sub.add_argument("--events-per-clip", type=int)
    sub.add_argument("--noise-scale", type=float)
    sub.add_argument("--step-s", type=float, help="feature step in seconds")
    sub.add_argument("--event-s", type=float, help="event grid size in seconds")
    sub.add_argument(
        "--echo",
        action="store_true",
        default=None,
        help="repeat the first event's direction at the end of each clip",
    )
    sub.add_argument("--synth-seed", type=int, help="corpus random seed")

    commands.add_parser("reformulate", parents=[common], help="rewrite queries")

    sub = commands.add_parser("localize", parents=[common], help="rank moments")
    sub.add_argument("--corpus", help="reformulated corpus")
    sub.add_argument(
        "--flat",
        action="store_true",
        help="embed each whole reformulation instead of localizing step by step",
    )

    sub = commands.add_parser("evaluate", parents=[common], help="R@n, IoU=m")
    sub.add_argument("--predictions", required=True, help="prediction dump")

    sub = commands.add_parser("compare", parents=[common], help="compare two runs")
    sub.add_argument("base", help="metrics of the reference run")
    sub.add_argument("other", help="metrics of the compared run")

    sub = commands.add_parser(
        "stats", parents=[common], help="corpus word statistics"
    )
    sub.add_argument("--corpus", help="reformulated corpus")

    commands.add_parser("windows", parents=[common], help="export training windows")

    sub = commands.add_parser(
        "import-ego4d", parents=[common], help="convert Ego4D NLQ"
    )
    sub.add_argument("nlq", help="Ego4D NLQ JSON file")
    return parser


def _configure_logging(verbosity: int) -> None:
    level = {0: logging.WARNING, 1: logging.INFO}.get(verbosity, logging.DEBUG)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")


def run_config_from_args(args: argparse.Namespace) -> config.RunConfig:
    file_values = config_lib.load_config_file(args.config) if args.config else {}
    flags = {name: getattr(args, name, None) for name in _SETTINGS}
    return config_lib.build_run_config(file_values, flags)


def _synth_spec(args: argparse.Namespace, cfg: config.RunConfig) -> ingest.SynthSpec:
    return synth.make_spec(
        seed=args.synth_seed,
        num_clips=args.num_clips,
        clip_duration=args.clip_duration,
        dim=cfg.dim,
        step_seconds=args.step_s,
        events_per_clip=args.events_per_clip,
        noise_scale=args.noise_scale,
        event_seconds=args.event_s,
        echo_first_event=args.echo,
        embed_seed=cfg.seed,
    )


def _dispatch(args: argparse.Namespace, cfg: config.RunConfig) -> None:
    handlers: Dict[str, Callable[[], Any]] = {
        "synth": lambda: cmd_synth(cfg, _synth_spec(args, cfg)),
        "reformulate": lambda: cmd_reformulate(cfg),
        "localize": lambda: cmd_localize(cfg, flat=args.flat),
        "evaluate": lambda: cmd_evaluate(cfg, args.predictions),
        "compare": lambda: cmd_compare(cfg, args.base, args.other),
        "stats": lambda: cmd_stats(cfg),
        "windows": lambda: cmd_windows(cfg),
        "import-ego4d": lambda: cmd_import_ego4d(cfg, args.nlq),
    }
    handlers[args.command]()


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run one subcommand and return its exit status."""
    args = build_parser().parse_args(argv)
    _configure_logging(args.verbose)
    try:
        cfg = run_config_from_args(args)
        _dispatch(args, cfg)
    except (exceptions.ValidationError, exceptions.CacheWriteError) as exc:
        sys.stderr.write("momentforge {}: {}\n".format(args.command, exc))
        return EXIT_INPUT
    except (
        core_exceptions.GoogleAPIError,
        exceptions.EmptyCompletionError,
        requests.exceptions.RequestException,
    ) as exc:
        sys.stderr.write("momentforge {}: {}\n".format(args.command, exc))
        return EXIT_TRANSPORT
    except OSError as exc:
        sys.stderr.write("momentforge {}: {}\n".format(args.command, exc))
        return EXIT_INPUT
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
