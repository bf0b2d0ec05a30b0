"""Deterministic figure rendering from experiment CSVs.

Four figure kinds:

* ``loglog``     -- per-label mean error vs level on log-log axes, with
                    optional theoretical guide lines of slope -(2-alpha)/4
                    anchored on a series value;
* ``overlay``    -- path series over time (true vs approximated curves);
* ``cpp``        -- like overlay but step-drawn, for sawtooth limits;
* ``comparison`` -- error paths of competing methods over time.

Vector (SVG) output is byte-stable for a given (input, job): the hash salt
is pinned and the date metadata dropped.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .data import read_paths, read_summary

KINDS = ("loglog", "overlay", "cpp", "comparison")

_SVG_SALT = "levysep-plots"


@dataclass(frozen=True)
class PlotJob:
    input_csv: str
    kind: str
    output_file: str
    slope_lines: tuple[tuple[float, int | None], ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown plot kind {self.kind!r}; choose from {KINDS}")


def guide_line(
    series: list[tuple[int, float]], alpha: float, anchor_level: int | None = None
) -> tuple[list[int], list[float]]:
    """Points of the power-law guide with slope -(2-alpha)/4 through an anchor.

    The line passes exactly through the series value at the anchor level
    (the middle level when none is given), so it overlays the data points.
    """
    levels = [level for level, _ in series]
    if anchor_level is None:
        anchor_level = levels[(len(levels) - 1) // 2]
    try:
        anchor_value = dict(series)[anchor_level]
    except KeyError:
        raise ValueError(f"anchor level {anchor_level} not among series levels {levels}") from None
    exponent = -(2.0 - alpha) / 4.0
    return levels, [anchor_value * (level / anchor_level) ** exponent for level in levels]


def _render_loglog(job: PlotJob, ax) -> None:
    series = read_summary(job.input_csv)
    greys = [str(0.75 * i / max(1, len(series) - 1)) for i in range(len(series))]
    for colour, (label, points) in zip(greys, sorted(series.items())):
        levels = [level for level, _ in points]
        means = [mean for _, mean in points]
        ax.loglog(levels, means, "o", markerfacecolor="none", color=colour, label=label)
    for alpha, anchor in job.slope_lines:
        label = f"{alpha:g}"
        if label not in series:
            raise ValueError(f"no series {label!r} to anchor a guide line on")
        levels, values = guide_line(series[label], alpha, anchor)
        line, = ax.loglog(levels, values, "-", linewidth=0.8, color="black")
        line.set_gid(f"guide-{label}")
    ax.set_xlabel("n")
    ax.set_ylabel("error")
    ax.legend(fontsize=8)


def _render_series(job: PlotJob, ax) -> None:
    t, series = read_paths(job.input_csv)
    drawstyle = "steps-post" if job.kind == "cpp" else "default"
    width = 0.7 if job.kind == "comparison" else 1.0
    greys = [str(0.7 * i / max(1, len(series) - 1)) for i in range(len(series))]
    for colour, (name, values) in zip(greys, series.items()):
        ax.plot(t, values, color=colour, linewidth=width, drawstyle=drawstyle, label=name)
    ax.set_xlabel("t")
    ax.legend(fontsize=8)


def render(job: PlotJob) -> Path:
    """Draw the requested figure and write it; returns the output path."""
    if not Path(job.input_csv).exists():
        raise FileNotFoundError(job.input_csv)
    with plt.rc_context({"svg.hashsalt": _SVG_SALT, "figure.figsize": (7.0, 3.6)}):
        fig, ax = plt.subplots()
        try:
            if job.kind == "loglog":
                _render_loglog(job, ax)
            else:
                _render_series(job, ax)
            fig.tight_layout()
            out = Path(job.output_file)
            if out.suffix.lower() == ".svg":
                fig.savefig(out, format="svg", metadata={"Date": None})
            else:
                fig.savefig(out)
        finally:
            plt.close(fig)
    return Path(job.output_file)
