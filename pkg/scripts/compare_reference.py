#!/usr/bin/env python3
"""Compare computed metric reports against an expected-values CSV.

Optional cross-check for the NeOn datasets (not vendored here; see the README
for the project URL). Give it a directory of dataset files and a CSV of
expected values (dataset, M1..M10); it assesses each dataset whose name
matches a CSV row and reports per-cell deviations beyond the tolerance.

This script is not part of the acceptance suite: dataset availability and
preprocessing differences make exact reproduction a best-effort exercise.

Usage:
    python scripts/compare_reference.py DATASET_DIR \
        [--expected CSV] [--tolerance 0.02] [--dictionary FILE]
"""

import argparse
import csv
import sys
from pathlib import Path

from rdfqa import assess, default_dictionary, load_dataset, load_dictionary
from rdfqa.fixtures import fixture_path
from rdfqa.metrics import MetricId


def read_expected(path):
    rows = {}
    with open(path, newline="", encoding="utf-8") as fh:
        for row in csv.DictReader(fh):
            rows[row["dataset"]] = {m.value: float(row[m.value]) for m in MetricId}
    return rows


def candidate_file(directory: Path, dataset_name: str):
    stem = dataset_name.lower().replace(" ", "_")
    for suffix in (".nt", ".ttl"):
        path = directory / (stem + suffix)
        if path.exists():
            return path
    return None


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("dataset_dir", type=Path)
    parser.add_argument("--expected", type=Path,
                        default=fixture_path("reference/neon_expected.csv"))
    parser.add_argument("--tolerance", type=float, default=0.02)
    parser.add_argument("--dictionary", type=Path)
    args = parser.parse_args(argv)

    expected = read_expected(args.expected)
    words = load_dictionary(args.dictionary) if args.dictionary else default_dictionary()

    failures = 0
    compared = 0
    for name, cells in expected.items():
        path = candidate_file(args.dataset_dir, name)
        if path is None:
            print(f"SKIP {name}: no matching file in {args.dataset_dir}")
            continue
        report = assess(load_dataset(path), words)
        compared += 1
        for mid in MetricId:
            got = report.metrics[mid].value
            want = cells[mid.value]
            marker = "ok"
            if abs(got - want) > args.tolerance:
                marker = "DIFF"
                failures += 1
            print(f"{name:<36} {mid.value:>4}  computed {got:.2f}  expected {want:.2f}  {marker}")

    if compared == 0:
        print("nothing compared; provide the dataset files to run this check")
        return 0
    print(f"\n{compared} datasets compared, {failures} cells beyond +-{args.tolerance}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
