"""Statistical analysis over metric reports.

Per-metric summaries (mean, sample standard deviation), before/after deltas,
and Spearman rank correlation with average-rank tie handling. The two-sided
p-value uses the Student-t approximation t = rho*sqrt((n-2)/(1-rho^2)) with
n-2 degrees of freedom; an exact permutation mode is available for small n as
a cross-check. A constant input vector makes the correlation undefined - a
tagged result (None cell), not an exception - because a vector of identical
values (typically all zeros) carries no rank information.
"""

from __future__ import annotations

import itertools
import json
import math
import statistics
from dataclasses import dataclass
from typing import Mapping, Sequence

from scipy.stats import t as student_t

from .metrics import MetricId, MetricReport


@dataclass(frozen=True)
class SummaryRow:
    metric: MetricId
    mean: float
    stdev: float


@dataclass(frozen=True)
class DeltaReport:
    dataset_id: str
    before: MetricReport
    after: MetricReport
    delta: Mapping[MetricId, float]


@dataclass(frozen=True)
class SpearmanResult:
    rho: float
    p_value: float


@dataclass(frozen=True)
class CorrelationMatrix:
    metric_ids: tuple[MetricId, ...]
    #: upper-triangle cells keyed (a, b) with a before b; None marks an
    #: undefined pair (at least one constant vector)
    cells: Mapping[tuple[MetricId, MetricId], SpearmanResult | None]
    alpha: float
    n: int

    def significant(self, a: MetricId, b: MetricId) -> bool:
        cell = self.cells.get((a, b)) or self.cells.get((b, a))
        return cell is not None and cell.p_value <= self.alpha


class MetricMismatch(Exception):
    """Reports do not cover the same metric selection."""


def summarize(reports: Sequence[MetricReport]) -> list[SummaryRow]:
    """Mean and sample standard deviation per metric over the report list."""
    if not reports:
        raise ValueError("summarize needs at least one report")
    rows = []
    for mid in MetricId:
        values = [r.metrics[mid].value for r in reports if mid in r.metrics]
        if not values:
            continue
        mean = statistics.fmean(values)
        stdev = statistics.stdev(values) if len(values) > 1 else 0.0
        rows.append(SummaryRow(metric=mid, mean=mean, stdev=stdev))
    return rows


def compute_delta(before: MetricReport, after: MetricReport) -> DeltaReport:
    """Elementwise after - before. Raises MetricMismatch on differing selections."""
    if set(before.metrics) != set(after.metrics):
        missing = {m.value for m in set(before.metrics) ^ set(after.metrics)}
        raise MetricMismatch(f"metric selections differ: {sorted(missing)}")
    delta = {mid: after.metrics[mid].value - before.metrics[mid].value
             for mid in before.metrics}
    return DeltaReport(dataset_id=after.dataset_id, before=before, after=after,
                       delta=delta)


# ---------------------------------------------------------------------------
# Spearman's rho


def average_ranks(values: Sequence[float]) -> list[float]:
    """1-based ranks; tied values share the average of their positions."""
    order = sorted(range(len(values)), key=lambda i: values[i])
    ranks = [0.0] * len(values)
    i = 0
    while i < len(order):
        j = i
        while j + 1 < len(order) and values[order[j + 1]] == values[order[i]]:
            j += 1
        rank = (i + j + 2) / 2.0  # average of 1-based positions i+1 .. j+1
        for k in range(i, j + 1):
            ranks[order[k]] = rank
        i = j + 1
    return ranks


def _pearson(x: Sequence[float], y: Sequence[float]) -> float:
    n = len(x)
    mean_x = sum(x) / n
    mean_y = sum(y) / n
    cov = sum((a - mean_x) * (b - mean_y) for a, b in zip(x, y))
    var_x = sum((a - mean_x) ** 2 for a in x)
    var_y = sum((b - mean_y) ** 2 for b in y)
    return cov / math.sqrt(var_x * var_y)


def spearman_rho(x: Sequence[float], y: Sequence[float]) -> SpearmanResult | None:
    """Spearman rank correlation with a t-approximated two-sided p-value.

    Returns None (undefined) when either vector is constant. Requires n >= 3.
    """
    if len(x) != len(y):
        raise ValueError("input vectors must have equal length")
    n = len(x)
    if n < 3:
        raise ValueError("need at least 3 samples")
    if min(x) == max(x) or min(y) == max(y):
        return None
    rho = _pearson(average_ranks(x), average_ranks(y))
    # guard against rounding drift before the t transform
    rho = max(-1.0, min(1.0, rho))
    if abs(rho) == 1.0:
        p = 0.0
    else:
        t_stat = rho * math.sqrt((n - 2) / (1.0 - rho * rho))
        p = 2.0 * float(student_t.sf(abs(t_stat), n - 2))
    return SpearmanResult(rho=rho, p_value=min(p, 1.0))


def spearman_exact_p(x: Sequence[float], y: Sequence[float]) -> float:
    """Exact two-sided permutation p-value, for n <= 10 only."""
    n = len(x)
    if n > 10:
        raise ValueError("exact permutation p-value is limited to n <= 10")
    observed = spearman_rho(x, y)
    if observed is None:
        raise ValueError("undefined correlation (constant input)")
    target = abs(observed.rho) - 1e-12
    rx = average_ranks(x)
    ry = average_ranks(y)
    hits = 0
    total = 0
    for perm in itertools.permutations(ry):
        total += 1
        if abs(_pearson(rx, perm)) >= target:
            hits += 1
    return hits / total


def correlation_matrix(reports: Sequence[MetricReport],
                       alpha: float = 0.05) -> CorrelationMatrix:
    """Pairwise rho over every metric pair present in all reports.

    Pairs involving a constant metric vector are Undefined (None cells),
    which operationalizes the caveat that all-zero metric columns would
    otherwise manufacture spurious correlations.
    """
    if len(reports) < 3:
        raise ValueError("need at least 3 reports")
    ids = tuple(mid for mid in MetricId if all(mid in r.metrics for r in reports))
    vectors = {mid: [r.metrics[mid].value for r in reports] for mid in ids}
    cells: dict[tuple[MetricId, MetricId], SpearmanResult | None] = {}
    for i, a in enumerate(ids):
        for b in ids[i + 1:]:
            cells[(a, b)] = spearman_rho(vectors[a], vectors[b])
    return CorrelationMatrix(metric_ids=ids, cells=cells, alpha=alpha, n=len(reports))


# ---------------------------------------------------------------------------
# Rendering


def render_summary(rows: Sequence[SummaryRow]) -> str:
    lines = ["metric  mean   stdev"]
    for row in rows:
        lines.append(f"{row.metric.value:<6}  {row.mean:.2f}   {row.stdev:.2f}")
    return "\n".join(lines) + "\n"


def render_delta_table(report: DeltaReport) -> str:
    lines = [f"dataset: {report.dataset_id}", "",
             "metric  before  after   delta"]
    for mid in MetricId:
        if mid not in report.delta:
            continue
        b = report.before.metrics[mid].value
        a = report.after.metrics[mid].value
        d = report.delta[mid]
        lines.append(f"{mid.value:<6}  {b:.2f}    {a:.2f}    {d:+.2f}")
    return "\n".join(lines) + "\n"


def delta_to_dict(report: DeltaReport) -> dict:
    return {
        "dataset": report.dataset_id,
        "before": {m.value: report.before.metrics[m].value for m in report.delta},
        "after": {m.value: report.after.metrics[m].value for m in report.delta},
        "delta": {m.value: report.delta[m] for m in report.delta},
    }


def delta_to_csv(report: DeltaReport) -> str:
    lines = ["metric,before,after,delta"]
    for mid in MetricId:
        if mid in report.delta:
            lines.append(f"{mid.value},{report.before.metrics[mid].value!r},"
                         f"{report.after.metrics[mid].value!r},{report.delta[mid]!r}")
    return "\n".join(lines) + "\n"


def render_matrix(matrix: CorrelationMatrix) -> str:
    """Upper-triangle text rendering: a rho row and a significance row per
    metric; '*' marks p <= alpha, '-' otherwise, 'n/a' an undefined pair."""
    ids = matrix.metric_ids
    width = 7
    header = "         " + "".join(f"{m.value:>{width}}" for m in ids)
    lines = [header]
    for i, a in enumerate(ids):
        rho_cells = []
        sig_cells = []
        for j, b in enumerate(ids):
            if j <= i:
                rho_cells.append(" " * width)
                sig_cells.append(" " * width)
                continue
            cell = matrix.cells[(a, b)]
            if cell is None:
                rho_cells.append(f"{'n/a':>{width}}")
                sig_cells.append(f"{'-':>{width}}")
            else:
                rho_cells.append(f"{cell.rho:>{width}.2f}")
                sig_cells.append(f"{'*' if cell.p_value <= matrix.alpha else '-':>{width}}")
        lines.append(f"{a.value:<9}" + "".join(rho_cells))
        lines.append(f"{'p value':<9}" + "".join(sig_cells))
    lines.append("")
    lines.append(f"('-' means p value > {matrix.alpha:g}, '*' means p value <= {matrix.alpha:g},"
                 " 'n/a' an undefined pair)")
    return "\n".join(lines) + "\n"


def matrix_to_dict(matrix: CorrelationMatrix) -> dict:
    pairs = []
    for (a, b), cell in matrix.cells.items():
        entry: dict = {"a": a.value, "b": b.value}
        if cell is None:
            entry["undefined"] = True
        else:
            entry.update(rho=cell.rho, p_value=cell.p_value,
                         significant=cell.p_value <= matrix.alpha)
        pairs.append(entry)
    return {"alpha": matrix.alpha, "n": matrix.n,
            "metrics": [m.value for m in matrix.metric_ids], "pairs": pairs}


def matrix_to_csv(matrix: CorrelationMatrix) -> str:
    lines = ["a,b,rho,p_value,significant"]
    for (a, b), cell in matrix.cells.items():
        if cell is None:
            lines.append(f"{a.value},{b.value},,,")
        else:
            lines.append(f"{a.value},{b.value},{cell.rho!r},{cell.p_value!r},"
                         f"{str(cell.p_value <= matrix.alpha).lower()}")
    return "\n".join(lines) + "\n"


def matrix_to_json(matrix: CorrelationMatrix) -> str:
    return json.dumps(matrix_to_dict(matrix), indent=2) + "\n"
