"""Command-line front end: assess, contaminate, compare, correlate.

Exit codes: 0 success, 1 unreadable or malformed input, 2 usage error.
Output files are written atomically; a failing command leaves no partial
files behind.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .contaminate import (
    ALL_HEURISTICS,
    ContaminationPlan,
    HEURISTIC_TARGETS,
    HeuristicId,
    contaminate,
    load_manifest,
    load_plan,
    manifest_to_json,
)
from .core.parsing import ParseError, load_dataset, merge_datasets, serialize_dataset
from .metrics import Dictionary, MetricId, assess, default_dictionary, load_dictionary, metric_id
from .reporting import load_report, render_report
from .stats import (
    MetricMismatch,
    compute_delta,
    correlation_matrix,
    delta_to_csv,
    delta_to_dict,
    matrix_to_csv,
    matrix_to_json,
    render_delta_table,
    render_matrix,
)

DICTIONARY_ENV = "RDFQA_DICTIONARY"

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_USAGE = 2


@dataclass
class RunConfig:
    command: str
    input_paths: list[Path] = field(default_factory=list)
    schema_path: Path | None = None
    dictionary_path: Path | None = None
    plan_path: Path | None = None
    output_path: Path | None = None
    manifest_path: Path | None = None
    format: str = "table"
    metric_selection: tuple[MetricId, ...] | None = None
    alpha: float = 0.05
    seed_override: int | None = None


def _fail(message: str, code: int) -> int:
    print(f"rdfqa: error: {message}", file=sys.stderr)
    return code


def _write_atomic(path: Path, data: bytes):
    tmp = path.with_name(path.name + f".tmp{os.getpid()}")
    try:
        tmp.write_bytes(data)
        os.replace(tmp, path)
    except BaseException:
        tmp.unlink(missing_ok=True)
        raise


def _emit(text: str, output_path: Path | None):
    if output_path is None:
        sys.stdout.write(text)
    else:
        _write_atomic(output_path, text.encode("utf-8"))


def _resolve_dictionary(cfg: RunConfig) -> Dictionary:
    # precedence: flag, then environment, then the packaged word list
    if cfg.dictionary_path is not None:
        return load_dictionary(cfg.dictionary_path)
    env = os.environ.get(DICTIONARY_ENV)
    if env:
        return load_dictionary(env)
    return default_dictionary()


def _load_input_dataset(cfg: RunConfig):
    dataset = load_dataset(cfg.input_paths[0])
    if cfg.schema_path is not None:
        dataset = merge_datasets(dataset, load_dataset(cfg.schema_path))
    return dataset


def cmd_assess(cfg: RunConfig) -> int:
    try:
        dataset = _load_input_dataset(cfg)
        dictionary = _resolve_dictionary(cfg)
    except ParseError as exc:
        return _fail(f"{cfg.input_paths[0]}: {exc}", EXIT_INPUT)
    except OSError as exc:
        return _fail(str(exc), EXIT_INPUT)
    report = assess(dataset, dictionary, selection=cfg.metric_selection)
    _emit(render_report(report, cfg.format), cfg.output_path)
    return EXIT_OK


def cmd_contaminate(cfg: RunConfig) -> int:
    try:
        dataset = _load_input_dataset(cfg)
        plan = load_plan(cfg.plan_path)
        dictionary = _resolve_dictionary(cfg)
    except ParseError as exc:
        return _fail(f"{cfg.input_paths[0]}: {exc}", EXIT_INPUT)
    except (OSError, json.JSONDecodeError, ValueError) as exc:
        return _fail(str(exc), EXIT_INPUT)
    if cfg.seed_override is not None:
        plan = ContaminationPlan(intensities=plan.intensities,
                                 seed=cfg.seed_override,
                                 dataset_id=plan.dataset_id or dataset.id)
    elif not plan.dataset_id:
        plan = ContaminationPlan(intensities=plan.intensities, seed=plan.seed,
                                 dataset_id=dataset.id)
    contaminated, manifest = contaminate(dataset, plan, dictionary)
    out_bytes = serialize_dataset(contaminated)
    manifest_json = manifest_to_json(manifest)
    manifest_path = cfg.manifest_path or cfg.output_path.with_suffix(".manifest.json")
    _write_atomic(cfg.output_path, out_bytes)
    _write_atomic(manifest_path, manifest_json.encode("utf-8"))
    for warning in manifest.warnings:
        print(f"rdfqa: warning: {warning}", file=sys.stderr)
    return EXIT_OK


def _trend_table(delta_report, manifest) -> str:
    """Requested/achieved heuristic counts next to the deltas of their
    target metrics, grouped the way the heuristics map onto the metrics."""
    groups: dict[MetricId, list[HeuristicId]] = {}
    for h in ALL_HEURISTICS:
        groups.setdefault(HEURISTIC_TARGETS[h], []).append(h)
    lines = ["heuristics  applied   metric  delta"]
    for mid in MetricId:
        hs = groups[mid]
        if not any(h in manifest.plan.intensities for h in hs):
            continue
        label = "+".join(h.value for h in hs)
        applied = "+".join(str(manifest.achieved.get(h, 0)) for h in hs)
        delta = delta_report.delta.get(mid)
        delta_txt = f"{delta:+.2f}" if delta is not None else "n/a"
        lines.append(f"{label:<10}  {applied:<8}  {mid.value:<6}  {delta_txt}")
    return "\n".join(lines) + "\n"


def cmd_compare(cfg: RunConfig) -> int:
    try:
        before = load_report(cfg.input_paths[0])
        after = load_report(cfg.input_paths[1])
        manifest = load_manifest(cfg.manifest_path) if cfg.manifest_path else None
    except (OSError, json.JSONDecodeError, KeyError, ValueError) as exc:
        return _fail(f"cannot read reports: {exc}", EXIT_INPUT)
    try:
        delta_report = compute_delta(before, after)
    except MetricMismatch as exc:
        return _fail(str(exc), EXIT_USAGE)
    if cfg.format == "json":
        payload = delta_to_dict(delta_report)
        if manifest is not None:
            payload["trend"] = [
                {"heuristic": h.value,
                 "requested": int(manifest.plan.intensities.get(h, 0)),
                 "achieved": int(manifest.achieved.get(h, 0)),
                 "metric": HEURISTIC_TARGETS[h].value,
                 "delta": delta_report.delta.get(HEURISTIC_TARGETS[h])}
                for h in ALL_HEURISTICS if h in manifest.plan.intensities
            ]
        text = json.dumps(payload, indent=2) + "\n"
    elif cfg.format == "csv":
        text = delta_to_csv(delta_report)
    else:
        text = render_delta_table(delta_report)
        if manifest is not None:
            text += "\n" + _trend_table(delta_report, manifest)
    _emit(text, cfg.output_path)
    return EXIT_OK


def cmd_correlate(cfg: RunConfig) -> int:
    if len(cfg.input_paths) < 3:
        return _fail("correlate needs at least 3 report files", EXIT_USAGE)
    try:
        reports = [load_report(p) for p in cfg.input_paths]
    except (OSError, json.JSONDecodeError, KeyError, ValueError) as exc:
        return _fail(f"cannot read reports: {exc}", EXIT_INPUT)
    matrix = correlation_matrix(reports, alpha=cfg.alpha)
    if cfg.format == "json":
        text = matrix_to_json(matrix)
    elif cfg.format == "csv":
        text = matrix_to_csv(matrix)
    else:
        text = render_matrix(matrix)
    _emit(text, cfg.output_path)
    return EXIT_OK


def _parse_metric_selection(raw: str) -> tuple[MetricId, ...]:
    ids = []
    for token in raw.replace(",", " ").split():
        ids.append(metric_id(token))
    if not ids:
        raise ValueError("empty metric selection")
    return tuple(dict.fromkeys(ids))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rdfqa",
        description="Assess the intrinsic quality of RDF datasets before publication.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_assess = sub.add_parser("assess", help="compute the quality metrics for a dataset")
    p_assess.add_argument("dataset", type=Path)
    p_assess.add_argument("--schema", type=Path, help="separate schema file merged before indexing")
    p_assess.add_argument("--dictionary", type=Path, help="word list for the misspelling metric")
    p_assess.add_argument("--metrics", help="subset to compute, e.g. M1,M7")
    p_assess.add_argument("--format", choices=("json", "csv", "table"), default="table")
    p_assess.add_argument("-o", "--output", type=Path)

    p_cont = sub.add_parser("contaminate", help="inject quality defects per a plan file")
    p_cont.add_argument("dataset", type=Path)
    p_cont.add_argument("--plan", type=Path, required=True)
    p_cont.add_argument("--seed", type=int, help="override the plan's seed")
    p_cont.add_argument("--schema", type=Path)
    p_cont.add_argument("--dictionary", type=Path)
    p_cont.add_argument("--manifest", type=Path, help="manifest output path")
    p_cont.add_argument("-o", "--output", type=Path, required=True)

    p_cmp = sub.add_parser("compare", help="delta between two metric reports")
    p_cmp.add_argument("before", type=Path)
    p_cmp.add_argument("after", type=Path)
    p_cmp.add_argument("--manifest", type=Path,
                       help="contamination manifest; adds the heuristic trend table")
    p_cmp.add_argument("--format", choices=("json", "csv", "table"), default="table")
    p_cmp.add_argument("-o", "--output", type=Path)

    p_corr = sub.add_parser("correlate", help="inter-metric rank correlation over reports")
    p_corr.add_argument("reports", type=Path, nargs="+")
    p_corr.add_argument("--alpha", type=float, default=0.05)
    p_corr.add_argument("--format", choices=("json", "csv", "table"), default="table")
    p_corr.add_argument("-o", "--output", type=Path)

    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(command=args.command)
    cfg.format = getattr(args, "format", "table")
    cfg.output_path = getattr(args, "output", None)
    cfg.schema_path = getattr(args, "schema", None)
    cfg.dictionary_path = getattr(args, "dictionary", None)
    cfg.manifest_path = getattr(args, "manifest", None)
    cfg.plan_path = getattr(args, "plan", None)
    cfg.seed_override = getattr(args, "seed", None)
    cfg.alpha = getattr(args, "alpha", 0.05)
    if args.command == "assess":
        cfg.input_paths = [args.dataset]
        if args.metrics:
            cfg.metric_selection = _parse_metric_selection(args.metrics)
    elif args.command == "contaminate":
        cfg.input_paths = [args.dataset]
    elif args.command == "compare":
        cfg.input_paths = [args.before, args.after]
    else:
        cfg.input_paths = list(args.reports)
    return cfg


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = config_from_args(args)
    except ValueError as exc:
        return _fail(str(exc), EXIT_USAGE)
    handlers = {
        "assess": cmd_assess,
        "contaminate": cmd_contaminate,
        "compare": cmd_compare,
        "correlate": cmd_correlate,
    }
    return handlers[cfg.command](cfg)


if __name__ == "__main__":
    sys.exit(main())
