"""Parsers for the two CSV schemas the experiment tool emits."""

from __future__ import annotations

import csv
from pathlib import Path

SUMMARY_HEADER = ["alpha_or_model", "level", "mean", "std", "count"]


def read_summary(path: str | Path) -> dict[str, list[tuple[int, float]]]:
    """Series of (level, mean) per label from a summary CSV."""
    with open(path, newline="") as handle:
        reader = csv.reader(handle)
        header = next(reader, None)
        if header != SUMMARY_HEADER:
            raise ValueError(
                f"{path}: expected summary header {','.join(SUMMARY_HEADER)}, got {header}"
            )
        series: dict[str, list[tuple[int, float]]] = {}
        for row in reader:
            series.setdefault(row[0], []).append((int(row[1]), float(row[2])))
    if not series:
        raise ValueError(f"{path}: no data rows")
    for label in series:
        series[label].sort()
    return series


def read_paths(path: str | Path) -> tuple[list[float], dict[str, list[float]]]:
    """Time grid and named value series from a paths CSV (header t,<name>...)."""
    with open(path, newline="") as handle:
        reader = csv.reader(handle)
        header = next(reader, None)
        if not header or header[0] != "t" or len(header) < 2:
            raise ValueError(f"{path}: expected paths header t,<series...>, got {header}")
        names = header[1:]
        t: list[float] = []
        series: dict[str, list[float]] = {name: [] for name in names}
        for row in reader:
            t.append(float(row[0]))
            for name, value in zip(names, row[1:]):
                series[name].append(float(value))
    if not t:
        raise ValueError(f"{path}: no data rows")
    return t, series
