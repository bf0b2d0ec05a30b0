"""levysep-plots: render figures from experiment CSVs."""

from __future__ import annotations

import argparse
import sys

from .render import KINDS, PlotJob, render


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="levysep-plots")
    sub = parser.add_subparsers(dest="command", required=True)
    ren = sub.add_parser("render", help="render one figure from a CSV")
    ren.add_argument("--kind", choices=KINDS, required=True)
    ren.add_argument("--in", dest="infile", required=True)
    ren.add_argument("--out", required=True)
    ren.add_argument("--slopes", default="",
                     help="comma-separated alphas for loglog guide lines, e.g. 0.2,1.0")
    ren.add_argument("--anchor", type=int, default=None,
                     help="level the guide lines pass through (default: middle level)")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    slopes = tuple(
        (float(alpha), args.anchor) for alpha in args.slopes.split(",") if alpha.strip()
    )
    job = PlotJob(args.infile, args.kind, args.out, slopes)
    render(job)
    return 0


if __name__ == "__main__":
    sys.exit(main())
