"""Report serialization: JSON, CSV (one row per dataset) and a plain table.

JSON and CSV carry full-precision values; the table view rounds to 0.01.
"""

from __future__ import annotations

import io
import json
from typing import Mapping

from .metrics import MetricId, MetricReport, MetricValue, ReportCounts, metric_id


def report_to_dict(report: MetricReport) -> dict:
    return {
        "dataset": report.dataset_id,
        "tool": "rdfqa",
        "version": report.tool_version,
        "counts": {
            "triples": report.counts.triples,
            "instances": report.counts.instances,
            "classes": report.counts.classes,
            "properties": report.counts.properties,
        },
        "dictionary": report.dictionary_id,
        "flags": list(report.flags),
        "metrics": {
            mid.value: {
                "value": mv.value,
                "numerator": mv.numerator,
                "denominator": mv.denominator,
                "clamped": mv.clamped,
                "offenders": list(mv.offenders),
            }
            for mid, mv in report.metrics.items()
        },
    }


def report_from_dict(data: Mapping) -> MetricReport:
    counts = data.get("counts", {})
    metrics = {}
    for key, entry in data["metrics"].items():
        mid = metric_id(key)
        metrics[mid] = MetricValue(
            id=mid,
            value=float(entry["value"]),
            numerator=int(entry["numerator"]),
            denominator=int(entry["denominator"]),
            clamped=bool(entry.get("clamped", False)),
            offenders=tuple(entry.get("offenders", ())),
        )
    return MetricReport(
        dataset_id=data.get("dataset", ""),
        counts=ReportCounts(
            triples=int(counts.get("triples", 0)),
            instances=int(counts.get("instances", 0)),
            classes=int(counts.get("classes", 0)),
            properties=int(counts.get("properties", 0)),
        ),
        metrics=metrics,
        dictionary_id=data.get("dictionary"),
        tool_version=data.get("version", ""),
        flags=tuple(data.get("flags", ())),
    )


def report_to_json(report: MetricReport) -> str:
    return json.dumps(report_to_dict(report), indent=2) + "\n"


def load_report(path) -> MetricReport:
    with open(path, encoding="utf-8") as fh:
        return report_from_dict(json.load(fh))


def report_to_csv(report: MetricReport) -> str:
    """One header line and one row: dataset, then the metric columns in order."""
    ids = [mid for mid in MetricId if mid in report.metrics]
    out = io.StringIO()
    out.write("dataset," + ",".join(m.value for m in ids) + "\n")
    out.write(report.dataset_id + ","
              + ",".join(repr(report.metrics[m].value) for m in ids) + "\n")
    return out.getvalue()


def report_to_table(report: MetricReport) -> str:
    lines = [
        f"dataset     {report.dataset_id}",
        f"triples     {report.counts.triples}",
        f"instances   {report.counts.instances}",
        f"classes     {report.counts.classes}",
        f"properties  {report.counts.properties}",
    ]
    if report.dictionary_id:
        lines.append(f"dictionary  {report.dictionary_id}")
    lines.append("")
    lines.append("metric  value  numerator  denominator")
    for mid in MetricId:
        mv = report.metrics.get(mid)
        if mv is None:
            continue
        note = " (clamped)" if mv.clamped else ""
        note += " (degenerate)" if mv.degenerate else ""
        lines.append(f"{mid.value:<6}  {mv.value:.2f}   {mv.numerator:<9}  {mv.denominator}{note}")
    if report.flags:
        lines.append("")
        lines.extend(f"! {flag}" for flag in report.flags)
    return "\n".join(lines) + "\n"


def render_report(report: MetricReport, fmt: str) -> str:
    if fmt == "json":
        return report_to_json(report)
    if fmt == "csv":
        return report_to_csv(report)
    if fmt == "table":
        return report_to_table(report)
    raise ValueError(f"unknown report format: {fmt!r}")
