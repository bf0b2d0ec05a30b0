"""Command line front end: simulate, decompose, experiment, rate-fit."""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

import numpy as np

from .decompose import bridge_of, reorder_decompose, threshold_decompose
from .grid import GridPath, increments_of, path_of
from .harness import (
    METHOD_REORDER,
    default_label,
    config_from_mapping,
    run_brownian_rate_check,
    run_cpp_limit_experiment,
    run_method_comparison,
    run_nosigma_experiment,
    run_table_experiment,
    read_summary_csv,
    write_raw_csv,
    write_summary_csv,
)
from .metrics import fit_rate
from .rng import RngStream
from .sim import (
    Bessel3,
    BrownianStd,
    CompoundPoisson,
    FixedSign,
    NormalJumps,
    Stable,
    VarianceGamma,
    Zero,
    sample_brownian_path,
    sample_signal_increments,
)


def _fmt(value: float) -> str:
    return f"{value:.17g}"


def _write_path_csv(path: Path, columns: dict[str, np.ndarray]) -> None:
    names = list(columns)
    length = len(next(iter(columns.values())))
    with open(path, "w", newline="\n") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["t"] + names)
        for i in range(length):
            t = i / (length - 1)
            writer.writerow([_fmt(t)] + [_fmt(columns[name][i]) for name in names])


def _read_path_csv(path: Path) -> GridPath:
    with open(path, newline="") as handle:
        reader = csv.reader(handle)
        header = next(reader)
        if len(header) < 2 or header[0] != "t":
            raise SystemExit(f"expected a path CSV with header t,<series>, got {header}")
        values = [float(row[1]) for row in reader]
    return GridPath(len(values) - 1, np.asarray(values))


def _signal_from_args(args: argparse.Namespace):
    if args.process == "zero":
        return Zero()
    if args.process == "brownian":
        return BrownianStd()
    if args.process == "bessel3":
        return Bessel3()
    if args.process == "stable":
        return Stable(args.alpha, args.beta, args.scale)
    if args.process == "vg":
        return VarianceGamma(args.theta, args.sigma_vg, args.nu)
    if args.process == "cpp":
        law = (
            FixedSign(args.jump_size)
            if args.jump_std is None
            else NormalJumps(args.jump_mean, args.jump_std)
        )
        return CompoundPoisson(args.rate, law)
    raise SystemExit(f"unknown process {args.process!r}")


def _cmd_simulate(args: argparse.Namespace) -> int:
    stream = RngStream(args.seed, args.stream_id)
    spec = _signal_from_args(args)
    if isinstance(spec, (BrownianStd, Bessel3)):
        path = sample_brownian_path(spec, args.n, stream)
    else:
        increments, _ = sample_signal_increments(spec, args.n, stream)
        path = path_of(increments)
    _write_path_csv(Path(args.out), {"value": path.values})
    return 0


def _cmd_decompose(args: argparse.Namespace) -> int:
    x_path = _read_path_csv(Path(args.infile))
    x = increments_of(x_path)
    if args.method == "reorder":
        w_prime = increments_of(
            sample_brownian_path(BrownianStd(), x.n, RngStream(args.wprime_seed))
        )
        approx = reorder_decompose(x, w_prime).w_approx
    else:
        a_n = args.threshold if args.threshold is not None else np.log(x.n) / np.sqrt(x.n)
        approx = threshold_decompose(x, args.sigma, a_n).w_approx
    approx_bridge = bridge_of(approx)
    recovered = GridPath(x.n, x_path.values - args.sigma * approx_bridge.values)
    _write_path_csv(
        Path(args.out),
        {
            "x": x_path.values,
            "w_approx": approx.values,
            "w_bridge_approx": approx_bridge.values,
            "signal_recovered": recovered.values,
        },
    )
    return 0


def _cmd_experiment(args: argparse.Namespace) -> int:
    with open(args.config) as handle:
        data = json.load(handle)
    kind = data.get("experiment", "table")
    if args.seed is not None:
        data["masterSeed"] = args.seed
    label = data.get("label")

    if kind == "table":
        config = config_from_mapping(data)
        report = run_table_experiment(
            config, label=label, csv_path=args.out_raw, workers=args.workers
        )
        reports = [(report, args.out_raw, args.out_summary)]
    elif kind == "comparison":
        config = config_from_mapping(data)
        reorder_report, threshold_report = run_method_comparison(
            config, label=label, workers=args.workers
        )
        reports = [
            (reorder_report, _suffixed(args.out_raw, "reorder"), _suffixed(args.out_summary, "reorder")),
            (threshold_report, _suffixed(args.out_raw, "threshold"), _suffixed(args.out_summary, "threshold")),
        ]
    elif kind == "cpp_limit":
        report = run_cpp_limit_experiment(
            data["rate"],
            data["levels"],
            data["fineLevel"],
            data["replications"],
            data["masterSeed"],
            workers=args.workers,
        )
        reports = [(report, args.out_raw, args.out_summary)]
    elif kind == "nosigma":
        report = run_nosigma_experiment(
            data.get("alpha", 1.5),
            data["levels"],
            data["replications"],
            data["masterSeed"],
            beta=data.get("beta", 0.0),
            workers=args.workers,
        )
        reports = [(report, args.out_raw, args.out_summary)]
    elif kind == "brownian_rate":
        report = run_brownian_rate_check(
            data["levels"],
            data["fineLevel"],
            data["replications"],
            data["masterSeed"],
            workers=args.workers,
        )
        reports = [(report, args.out_raw, args.out_summary)]
    else:
        raise SystemExit(f"unknown experiment kind {kind!r}")

    for report, raw_path, summary_path in reports:
        if raw_path and (kind != "table" or raw_path != args.out_raw):
            write_raw_csv(report, raw_path)
        if summary_path:
            write_summary_csv(report, summary_path)
        for row in report.summary:
            print(f"{report.label} n={row.level}: mean={row.mean:.6f} std={row.std:.6f} count={row.count}")
    return 0


def _suffixed(path: str | None, tag: str) -> str | None:
    if path is None:
        return None
    p = Path(path)
    return str(p.with_name(f"{p.stem}.{tag}{p.suffix}"))


def _cmd_rate_fit(args: argparse.Namespace) -> int:
    rows = read_summary_csv(args.infile)
    fits = {}
    labels = sorted({label for label, *_ in rows})
    for wanted in labels:
        pairs = [(level, mean) for label, level, mean, _, _ in rows if label == wanted]
        fit = fit_rate(pairs)
        fits[wanted] = {"slope": fit.slope, "intercept": fit.intercept, "rSquared": fit.r_squared}
    payload = json.dumps({"fits": fits}, indent=2, sort_keys=True)
    if args.out:
        Path(args.out).write_text(payload + "\n")
    else:
        print(payload)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="levysep",
        description="Recover Brownian and jump path components from high-frequency observations.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="sample a process path to a CSV")
    sim.add_argument("--process", required=True,
                     choices=["brownian", "bessel3", "stable", "vg", "cpp", "zero"])
    sim.add_argument("--n", type=int, required=True, help="grid resolution")
    sim.add_argument("--seed", type=int, default=0, help="master seed")
    sim.add_argument("--stream-id", type=int, default=0)
    sim.add_argument("--alpha", type=float, default=1.5)
    sim.add_argument("--beta", type=float, default=0.0)
    sim.add_argument("--scale", type=float, default=1.0)
    sim.add_argument("--theta", type=float, default=-0.1)
    sim.add_argument("--sigma-vg", type=float, default=0.3)
    sim.add_argument("--nu", type=float, default=0.25)
    sim.add_argument("--rate", type=float, default=3.0)
    sim.add_argument("--jump-size", type=float, default=1.0)
    sim.add_argument("--jump-mean", type=float, default=0.0)
    sim.add_argument("--jump-std", type=float, default=None)
    sim.add_argument("--out", required=True)
    sim.set_defaults(func=_cmd_simulate)

    dec = sub.add_parser("decompose", help="approximate the Brownian part of a path CSV")
    dec.add_argument("--in", dest="infile", required=True)
    dec.add_argument("--method", choices=["reorder", "threshold"], default="reorder")
    dec.add_argument("--sigma", type=float, default=1.0)
    dec.add_argument("--threshold", type=float, default=None,
                     help="fixed cutoff for the threshold method (default log(n)/sqrt(n))")
    dec.add_argument("--wprime-seed", type=int, default=0)
    dec.add_argument("--out", required=True)
    dec.set_defaults(func=_cmd_decompose)

    exp = sub.add_parser("experiment", help="run a named experiment from a JSON config")
    exp.add_argument("--config", required=True)
    exp.add_argument("--seed", type=int, default=None, help="override masterSeed")
    exp.add_argument("--workers", type=int, default=None,
                     help="worker processes (default LEVYSEP_THREADS or 1)")
    exp.add_argument("--out-raw", default=None)
    exp.add_argument("--out-summary", default=None)
    exp.set_defaults(func=_cmd_experiment)

    fit = sub.add_parser("rate-fit", help="fit log-log slopes from a summary CSV")
    fit.add_argument("--in", dest="infile", required=True)
    fit.add_argument("--out", default=None)
    fit.set_defaults(func=_cmd_rate_fit)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
