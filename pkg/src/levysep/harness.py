"""Seeded Monte Carlo experiment runners and report plumbing.

Every experiment follows the same template: per replication, simulate the
Brownian component W, the signal Y and (for the reordering method) an
independent fresh Brownian path W' once at the finest level, form
X = Y + sigma*W, then coarsen to each approximation level, decompose, and
record an error functional against the fine W.  Streams are derived from
(master_seed, replication, component tag), so runs are deterministic and
replication-parallel execution yields records identical to serial runs.

Reports carry raw per-replication records plus per-level mean/std summaries;
CSV schemas are documented in the README and frozen by tests.
"""

from __future__ import annotations

import csv
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Callable, Iterable, Sequence

import numpy as np

from ._version import __version__
from .decompose import TiedIncrementsError, reorder_decompose, threshold_decompose
from .grid import GridPath, coarsen, compose, increments_of, path_of
from .metrics import cpp_limit_process, cross_variation, scaled_cpp_error, sup_bridge_error
from .rng import RngStream, derive_stream_id
from .sim import (
    Bessel3,
    BrownianLaw,
    BrownianStd,
    CompositeSpec,
    CompoundPoisson,
    FixedSign,
    JumpLaw,
    JumpRecord,
    NormalJumps,
    ProcessSpec,
    Stable,
    VarianceGamma,
    Zero,
    sample_brownian_path,
    sample_gaussian_increments,
    sample_signal_increments,
)

METHOD_REORDER = "ReorderI"
METHOD_THRESHOLD = "ThresholdII"

_ENV_THREADS = "LEVYSEP_THREADS"


# ---------------------------------------------------------------------------
# Threshold rules
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DefaultThreshold:
    """log(n)/sqrt(n), the cutoff valid at every jump activity."""

    def resolve(self, n: int) -> float:
        return math.log(n) / math.sqrt(n)


@dataclass(frozen=True)
class FixedThreshold:
    value: float

    def __post_init__(self) -> None:
        if self.value <= 0.0:
            raise ValueError(f"threshold must be positive, got {self.value}")

    def resolve(self, n: int) -> float:
        return self.value


@dataclass(frozen=True)
class ThresholdSchedule:
    """A cutoff given as an expression in n, e.g. "0.1/sqrt(n)"."""

    expression: str

    def resolve(self, n: int) -> float:
        namespace = {
            "n": n,
            "log": math.log,
            "sqrt": math.sqrt,
            "exp": math.exp,
            "pi": math.pi,
        }
        value = float(eval(self.expression, {"__builtins__": {}}, namespace))
        if value <= 0.0:
            raise ValueError(f"schedule {self.expression!r} gave {value} at n={n}")
        return value


ThresholdRule = DefaultThreshold | FixedThreshold | ThresholdSchedule


# ---------------------------------------------------------------------------
# Configuration and report types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ExperimentConfig:
    composite: CompositeSpec
    levels: tuple[int, ...]
    fine_level: int
    replications: int
    master_seed: int
    method: str = METHOD_REORDER
    threshold: ThresholdRule = field(default_factory=DefaultThreshold)

    def __post_init__(self) -> None:
        object.__setattr__(self, "levels", tuple(int(n) for n in self.levels))
        if not self.levels:
            raise ValueError("need at least one approximation level")
        for n in self.levels:
            if n < 1:
                raise ValueError(f"levels must be >= 1, got {n}")
            if self.fine_level % n != 0:
                raise ValueError(f"level {n} does not divide fine level {self.fine_level}")
        if self.replications < 1:
            raise ValueError(f"replications must be >= 1, got {self.replications}")
        if self.method not in (METHOD_REORDER, METHOD_THRESHOLD):
            raise ValueError(f"unknown method {self.method!r}")


@dataclass(frozen=True)
class ErrorSample:
    level: int
    fine_level: int
    value: float
    replication: int
    seed: int

    def __post_init__(self) -> None:
        if self.fine_level % self.level != 0:
            raise ValueError(f"level {self.level} does not divide {self.fine_level}")
        if self.value < 0.0:
            raise ValueError(f"error values are nonnegative, got {self.value}")


@dataclass(frozen=True)
class SummaryRow:
    level: int
    mean: float
    std: float
    count: int


@dataclass(frozen=True)
class ExperimentReport:
    label: str
    records: list[ErrorSample]
    summary: list[SummaryRow]
    config_echo: dict
    software_version: str = __version__


def summarize(records: Sequence[ErrorSample]) -> list[SummaryRow]:
    """Per-level mean and sample standard deviation (divisor count-1).

    A single record reports std 0 with count 1 as the flag.
    """
    if not records:
        raise ValueError("cannot summarize an empty record list")
    by_level: dict[int, list[float]] = {}
    for record in records:
        by_level.setdefault(record.level, []).append(record.value)
    rows = []
    for level in sorted(by_level):
        values = np.asarray(by_level[level])
        std = float(np.std(values, ddof=1)) if values.size > 1 else 0.0
        rows.append(SummaryRow(level, float(np.mean(values)), std, values.size))
    return rows


def default_label(signal: ProcessSpec) -> str:
    """CSV label for the alpha_or_model column."""
    if isinstance(signal, Stable):
        return f"{signal.alpha:g}"
    if isinstance(signal, Zero):
        return "zero"
    if isinstance(signal, VarianceGamma):
        return "vg"
    if isinstance(signal, CompoundPoisson):
        return "cpp"
    if isinstance(signal, BrownianStd):
        return "brownian"
    if isinstance(signal, Bessel3):
        return "bessel3"
    raise ValueError(f"unsupported signal spec: {signal!r}")


# ---------------------------------------------------------------------------
# Replication simulation
# ---------------------------------------------------------------------------

def simulate_replication(
    config: ExperimentConfig,
    replication: int,
    *,
    need_w_prime: bool = True,
    w_prime_tag: str = "wprime",
) -> tuple[GridPath, GridPath, GridPath | None, JumpRecord | None]:
    """Simulate (W, X, W', jumps) for one replication at the fine level.

    Component streams are (master_seed, hash(replication, tag)) with tags
    "w", "y" and "wprime"; passing ``w_prime_tag="w"`` forces W' to replay
    W's stream, a coupling hook used by the self-consistency tests.
    """
    master = RngStream(config.master_seed)
    n = config.fine_level
    w_path = sample_brownian_path(config.composite.brownian_law, n, master.child(replication, "w"))
    y_increments, jumps = sample_signal_increments(
        config.composite.signal, n, master.child(replication, "y")
    )
    x_path = path_of(compose(config.composite.sigma, increments_of(w_path), y_increments))
    w_prime_path = None
    if need_w_prime:
        w_prime_path = path_of(
            sample_gaussian_increments(n, master.child(replication, w_prime_tag))
        )
    return w_path, x_path, w_prime_path, jumps


def _decompose_error(
    config: ExperimentConfig,
    method: str,
    level: int,
    w_path: GridPath,
    x_path: GridPath,
    w_prime_path: GridPath | None,
) -> float:
    if method == METHOD_REORDER:
        if level == 1:
            # Single-increment control: keep the whole fresh path, so the
            # error measures the gap between two independent bridges.
            return sup_bridge_error(w_path, w_prime_path)
        x_coarse = increments_of(coarsen(x_path, level))
        w_prime_coarse = increments_of(coarsen(w_prime_path, level))
        # heavy-tailed signals can push the path to magnitudes where the
        # observed increments tie bitwise; break those by grid position
        approx = reorder_decompose(x_coarse, w_prime_coarse, ties="stable").w_approx
    else:
        x_coarse = increments_of(coarsen(x_path, level))
        a_n = config.threshold.resolve(level)
        approx = threshold_decompose(x_coarse, config.composite.sigma, a_n).w_approx
    return sup_bridge_error(w_path, approx)


def _table_replication(args: tuple[ExperimentConfig, int, str]) -> tuple[int, list[tuple[int, float]]]:
    config, replication, w_prime_tag = args
    need_w_prime = config.method == METHOD_REORDER
    w_path, x_path, w_prime_path, _ = simulate_replication(
        config, replication, need_w_prime=need_w_prime, w_prime_tag=w_prime_tag
    )
    rows = [
        (level, _decompose_error(config, config.method, level, w_path, x_path, w_prime_path))
        for level in config.levels
    ]
    return replication, rows


def _comparison_replication(
    args: tuple[ExperimentConfig, int, str],
) -> tuple[int, list[tuple[int, float, float]]]:
    config, replication, w_prime_tag = args
    w_path, x_path, w_prime_path, _ = simulate_replication(
        config, replication, w_prime_tag=w_prime_tag
    )
    rows = []
    for level in config.levels:
        reorder_err = _decompose_error(
            config, METHOD_REORDER, level, w_path, x_path, w_prime_path
        )
        threshold_err = _decompose_error(
            config, METHOD_THRESHOLD, level, w_path, x_path, w_prime_path
        )
        rows.append((level, reorder_err, threshold_err))
    return replication, rows


def _resolve_workers(workers: int | None) -> int:
    if workers is None:
        workers = int(os.environ.get(_ENV_THREADS, "1"))
    return max(1, workers)


def _run_replications(
    worker: Callable,
    tasks: list[tuple],
    workers: int | None,
) -> list[tuple]:
    """Run replication tasks, serially or on a process pool, in task order."""
    count = _resolve_workers(workers)
    if count == 1 or len(tasks) <= 1:
        return [worker(task) for task in tasks]
    with ProcessPoolExecutor(max_workers=count) as pool:
        return list(pool.map(worker, tasks, chunksize=max(1, len(tasks) // (4 * count))))


# ---------------------------------------------------------------------------
# Experiment runners
# ---------------------------------------------------------------------------

def run_table_experiment(
    config: ExperimentConfig,
    *,
    label: str | None = None,
    csv_path: str | Path | None = None,
    workers: int | None = None,
    w_prime_tag: str = "wprime",
) -> ExperimentReport:
    """Per-(level, replication) sup bridge errors for one method.

    With ``csv_path`` set, records are appended replication by replication
    and an interrupted run resumes after the last complete replication.
    """
    label = label if label is not None else default_label(config.composite.signal)
    done: list[ErrorSample] = []
    start = 0
    writer = None
    if csv_path is not None:
        done, start = _load_resumable(Path(csv_path), label, config)
        writer = _RawCsvAppender(Path(csv_path), label, fresh=start == 0)

    tasks = [(config, rep, w_prime_tag) for rep in range(start, config.replications)]
    records = list(done)
    for replication, rows in _run_replications(_table_replication, tasks, workers):
        seed = derive_stream_id(replication, "w")
        fresh = [
            ErrorSample(level, config.fine_level, value, replication, seed)
            for level, value in rows
        ]
        records.extend(fresh)
        if writer is not None:
            writer.append(fresh)
    if writer is not None:
        writer.close()
    return ExperimentReport(label, records, summarize(records), config_to_mapping(config))


def run_method_comparison(
    config: ExperimentConfig,
    *,
    label: str | None = None,
    workers: int | None = None,
    w_prime_tag: str = "wprime",
) -> tuple[ExperimentReport, ExperimentReport]:
    """Both methods on byte-identical simulated paths, as paired reports.

    Returns (reordering report, threshold report); the shared streams make
    the per-replication errors directly comparable.
    """
    label = label if label is not None else default_label(config.composite.signal)
    tasks = [(config, rep, w_prime_tag) for rep in range(config.replications)]
    reorder_records: list[ErrorSample] = []
    threshold_records: list[ErrorSample] = []
    for replication, rows in _run_replications(_comparison_replication, tasks, workers):
        seed = derive_stream_id(replication, "w")
        for level, reorder_err, threshold_err in rows:
            reorder_records.append(
                ErrorSample(level, config.fine_level, reorder_err, replication, seed)
            )
            threshold_records.append(
                ErrorSample(level, config.fine_level, threshold_err, replication, seed)
            )
    echo = config_to_mapping(config)
    return (
        ExperimentReport(label, reorder_records, summarize(reorder_records), {**echo, "method": METHOD_REORDER}),
        ExperimentReport(label, threshold_records, summarize(threshold_records), {**echo, "method": METHOD_THRESHOLD}),
    )


def _cpp_replication(args: tuple[ExperimentConfig, int]) -> tuple[int, list[tuple[int, float]]]:
    config, replication = args
    w_path, x_path, w_prime_path, jumps = simulate_replication(config, replication)
    rows = []
    for level in config.levels:
        x_coarse = increments_of(coarsen(x_path, level))
        w_prime_coarse = increments_of(coarsen(w_prime_path, level))
        approx = reorder_decompose(x_coarse, w_prime_coarse, ties="stable").w_approx
        scaled = scaled_cpp_error(w_path, approx)
        limit = cpp_limit_process(jumps, level)
        rows.append((level, float(np.max(np.abs(scaled.values - limit.values)))))
    return replication, rows


def run_cpp_limit_experiment(
    rate: float,
    levels: Sequence[int],
    fine_level: int,
    replications: int,
    master_seed: int,
    *,
    jump_law: JumpLaw = FixedSign(1.0),
    sigma: float = 1.0,
    brownian_law: BrownianLaw = BrownianStd(),
    workers: int | None = None,
) -> ExperimentReport:
    """Sup distance between the rescaled skeleton error and its sawtooth limit.

    The signal is compound Poisson; per replication and level the record is
    the largest grid gap between the rescaled reordering error and the
    sign-driven sawtooth built from the realised jumps.  The default
    Brownian component is standard (the limit statement's own setting); the
    slowly vanishing coupling residual makes convergence visible only in a
    paired per-replication comparison.
    """
    config = ExperimentConfig(
        composite=CompositeSpec(sigma, brownian_law, CompoundPoisson(rate, jump_law)),
        levels=tuple(levels),
        fine_level=fine_level,
        replications=replications,
        master_seed=master_seed,
    )
    if min(config.levels) < 3:
        raise ValueError("levels below 3 degenerate the log scaling")
    tasks = [(config, rep) for rep in range(config.replications)]
    records = []
    for replication, rows in _run_replications(_cpp_replication, tasks, workers):
        seed = derive_stream_id(replication, "w")
        records.extend(
            ErrorSample(level, fine_level, value, replication, seed) for level, value in rows
        )
    return ExperimentReport("cpp", records, summarize(records), config_to_mapping(config))


def _nosigma_replication(args: tuple[ExperimentConfig, int]) -> tuple[int, list[tuple[int, float]]]:
    config, replication = args
    master = RngStream(config.master_seed)
    fine = config.fine_level
    y_increments, _ = sample_signal_increments(
        config.composite.signal, fine, master.child(replication, "y")
    )
    if np.all(y_increments.deltas == y_increments.deltas[0]):
        raise TiedIncrementsError(
            "all observed increments are identical; with sigma = 0 the path "
            "carries no order information to couple against"
        )
    x_path = path_of(y_increments)
    w_prime_path = path_of(sample_gaussian_increments(fine, master.child(replication, "wprime")))
    rows = []
    for level in config.levels:
        x_coarse = increments_of(coarsen(x_path, level))
        w_prime_coarse = increments_of(coarsen(w_prime_path, level))
        approx = reorder_decompose(x_coarse, w_prime_coarse, ties="stable").w_approx
        rows.append((level, abs(cross_variation(x_coarse, increments_of(approx)))))
    return replication, rows


def run_nosigma_experiment(
    alpha: float,
    levels: Sequence[int],
    replications: int,
    master_seed: int,
    *,
    beta: float = 0.0,
    signal: ProcessSpec | None = None,
    workers: int | None = None,
) -> ExperimentReport:
    """|cross variation| between X and its reordered walk when sigma = 0.

    X is the signal alone (stable by default); the reordered walk is a
    Brownian random walk whose product-sum with X should vanish as the
    level grows.  A constant signal trips the tie detector.
    """
    if signal is None:
        if not alpha < 2.0:
            raise ValueError("stable signal needs alpha < 2 for the sigma=0 experiment")
        signal = Stable(alpha, beta)
    fine = max(int(n) for n in levels)
    config = ExperimentConfig(
        composite=CompositeSpec(0.0, BrownianStd(), signal),
        levels=tuple(levels),
        fine_level=fine,
        replications=replications,
        master_seed=master_seed,
    )
    tasks = [(config, rep) for rep in range(config.replications)]
    records = []
    for replication, rows in _run_replications(_nosigma_replication, tasks, workers):
        seed = derive_stream_id(replication, "y")
        records.extend(
            ErrorSample(level, fine, value, replication, seed) for level, value in rows
        )
    return ExperimentReport(
        default_label(signal), records, summarize(records), config_to_mapping(config)
    )


def run_brownian_rate_check(
    levels: Sequence[int],
    fine_level: int,
    replications: int,
    master_seed: int,
    *,
    workers: int | None = None,
) -> ExperimentReport:
    """Sup bridge error scaled by sqrt(n / log log n) for the pure Brownian case.

    The scaled records should stay bounded across levels; levels must be at
    least 16 so the double logarithm is positive.
    """
    if min(int(n) for n in levels) < 16:
        raise ValueError("levels must be >= 16 for the log log scaling")
    config = ExperimentConfig(
        composite=CompositeSpec(1.0, BrownianStd(), Zero()),
        levels=tuple(levels),
        fine_level=fine_level,
        replications=replications,
        master_seed=master_seed,
    )
    tasks = [(config, rep, "wprime") for rep in range(config.replications)]
    records = []
    for replication, rows in _run_replications(_table_replication, tasks, workers):
        seed = derive_stream_id(replication, "w")
        records.extend(
            ErrorSample(
                level,
                fine_level,
                value * math.sqrt(level / math.log(math.log(level))),
                replication,
                seed,
            )
            for level, value in rows
        )
    return ExperimentReport("zero", records, summarize(records), config_to_mapping(config))


# ---------------------------------------------------------------------------
# CSV schemas
# ---------------------------------------------------------------------------

RAW_HEADER = ["alpha_or_model", "level", "fine_level", "replication", "seed", "error"]
SUMMARY_HEADER = ["alpha_or_model", "level", "mean", "std", "count"]


def _fmt(value: float) -> str:
    return f"{value:.17g}"


class _RawCsvAppender:
    """Replication-ordered append-only writer for raw record CSVs."""

    def __init__(self, path: Path, label: str, fresh: bool) -> None:
        self._label = label
        mode = "w" if fresh else "a"
        self._handle = open(path, mode, newline="\n")
        self._writer = csv.writer(self._handle, lineterminator="\n")
        if fresh:
            self._writer.writerow(RAW_HEADER)

    def append(self, records: Iterable[ErrorSample]) -> None:
        for r in records:
            self._writer.writerow(
                [self._label, r.level, r.fine_level, r.replication, r.seed, _fmt(r.value)]
            )
        self._handle.flush()

    def close(self) -> None:
        self._handle.close()


def write_raw_csv(report: ExperimentReport, path: str | Path) -> None:
    writer = _RawCsvAppender(Path(path), report.label, fresh=True)
    writer.append(report.records)
    writer.close()


def read_raw_csv(path: str | Path) -> tuple[str, list[ErrorSample]]:
    with open(path, newline="") as handle:
        reader = csv.reader(handle)
        header = next(reader)
        if header != RAW_HEADER:
            raise ValueError(f"unexpected raw CSV header: {header}")
        label = ""
        records = []
        for row in reader:
            label = row[0]
            records.append(
                ErrorSample(int(row[1]), int(row[2]), float(row[5]), int(row[3]), int(row[4]))
            )
    return label, records


def _load_resumable(
    path: Path, label: str, config: ExperimentConfig
) -> tuple[list[ErrorSample], int]:
    """Records of the complete-replication prefix of an existing raw CSV.

    Truncates a partially written tail so that resuming reproduces the
    byte-identical file a fresh run would write.
    """
    if not path.exists():
        return [], 0
    stored_label, records = read_raw_csv(path)
    if records and stored_label != label:
        raise ValueError(f"resume label mismatch: file has {stored_label!r}, run has {label!r}")
    per_rep: dict[int, list[ErrorSample]] = {}
    for record in records:
        per_rep.setdefault(record.replication, []).append(record)
    prefix: list[ErrorSample] = []
    next_rep = 0
    while next_rep in per_rep and len(per_rep[next_rep]) == len(config.levels):
        prefix.extend(per_rep[next_rep])
        next_rep += 1
    writer = _RawCsvAppender(path, label, fresh=True)
    writer.append(prefix)
    writer.close()
    return prefix, next_rep


def write_summary_csv(report: ExperimentReport, path: str | Path) -> None:
    with open(path, "w", newline="\n") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(SUMMARY_HEADER)
        for row in report.summary:
            writer.writerow([report.label, row.level, _fmt(row.mean), _fmt(row.std), row.count])


def read_summary_csv(path: str | Path) -> list[tuple[str, int, float, float, int]]:
    with open(path, newline="") as handle:
        reader = csv.reader(handle)
        header = next(reader)
        if header != SUMMARY_HEADER:
            raise ValueError(f"unexpected summary CSV header: {header}")
        return [
            (row[0], int(row[1]), float(row[2]), float(row[3]), int(row[4])) for row in reader
        ]


# ---------------------------------------------------------------------------
# Config file mapping (JSON data model, spec field names)
# ---------------------------------------------------------------------------

def _signal_to_mapping(spec: ProcessSpec) -> dict | str:
    if isinstance(spec, Zero):
        return "Zero"
    if isinstance(spec, BrownianStd):
        return "BrownianStd"
    if isinstance(spec, Bessel3):
        return "Bessel3"
    if isinstance(spec, Stable):
        return {"Stable": {"alpha": spec.alpha, "beta": spec.beta, "scale": spec.scale}}
    if isinstance(spec, VarianceGamma):
        return {"VarianceGamma": {"theta": spec.theta, "sigmaVg": spec.sigma_vg, "nu": spec.nu}}
    if isinstance(spec, CompoundPoisson):
        if isinstance(spec.jump_law, FixedSign):
            jump_law = {"FixedSign": {"size": spec.jump_law.size}}
        else:
            jump_law = {"NormalJumps": {"mean": spec.jump_law.mean, "std": spec.jump_law.std}}
        return {"CompoundPoisson": {"rate": spec.rate, "jumpLaw": jump_law}}
    raise ValueError(f"unsupported signal spec: {spec!r}")


def _signal_from_mapping(data: dict | str) -> ProcessSpec:
    if isinstance(data, str):
        try:
            return {"Zero": Zero(), "BrownianStd": BrownianStd(), "Bessel3": Bessel3()}[data]
        except KeyError:
            raise ValueError(f"unknown signal kind {data!r}") from None
    if len(data) != 1:
        raise ValueError(f"signal mapping must have exactly one key, got {sorted(data)}")
    kind, params = next(iter(data.items()))
    if kind == "Stable":
        return Stable(params["alpha"], params.get("beta", 0.0), params.get("scale", 1.0))
    if kind == "VarianceGamma":
        return VarianceGamma(
            params.get("theta", -0.1), params.get("sigmaVg", 0.3), params.get("nu", 0.25)
        )
    if kind == "CompoundPoisson":
        jump_data = params.get("jumpLaw", {"FixedSign": {"size": 1.0}})
        (jump_kind, jump_params), = jump_data.items()
        if jump_kind == "FixedSign":
            law: JumpLaw = FixedSign(jump_params["size"])
        elif jump_kind == "NormalJumps":
            law = NormalJumps(jump_params["mean"], jump_params["std"])
        else:
            raise ValueError(f"unknown jump law {jump_kind!r}")
        return CompoundPoisson(params["rate"], law)
    raise ValueError(f"unknown signal kind {kind!r}")


def _threshold_to_mapping(rule: ThresholdRule) -> dict | str:
    if isinstance(rule, DefaultThreshold):
        return "Default"
    if isinstance(rule, FixedThreshold):
        return {"Fixed": rule.value}
    return {"Schedule": rule.expression}


def _threshold_from_mapping(data: dict | str) -> ThresholdRule:
    if isinstance(data, str):
        if data != "Default":
            raise ValueError(f"unknown threshold rule {data!r}")
        return DefaultThreshold()
    (kind, value), = data.items()
    if kind == "Fixed":
        return FixedThreshold(float(value))
    if kind == "Schedule":
        return ThresholdSchedule(str(value))
    raise ValueError(f"unknown threshold rule {kind!r}")


def config_to_mapping(config: ExperimentConfig) -> dict:
    """JSON-compatible mapping mirroring the config field names."""
    return {
        "composite": {
            "sigma": config.composite.sigma,
            "brownianLaw": "Bessel3" if isinstance(config.composite.brownian_law, Bessel3) else "BrownianStd",
            "signal": _signal_to_mapping(config.composite.signal),
        },
        "levels": list(config.levels),
        "fineLevel": config.fine_level,
        "replications": config.replications,
        "masterSeed": config.master_seed,
        "method": config.method,
        "threshold": _threshold_to_mapping(config.threshold),
    }


def config_from_mapping(data: dict) -> ExperimentConfig:
    composite = data["composite"]
    brownian = {"BrownianStd": BrownianStd(), "Bessel3": Bessel3()}.get(
        composite.get("brownianLaw", "BrownianStd")
    )
    if brownian is None:
        raise ValueError(f"unknown Brownian law {composite['brownianLaw']!r}")
    spec = CompositeSpec(
        float(composite["sigma"]), brownian, _signal_from_mapping(composite["signal"])
    )
    return ExperimentConfig(
        composite=spec,
        levels=tuple(data["levels"]),
        fine_level=int(data["fineLevel"]),
        replications=int(data["replications"]),
        master_seed=int(data["masterSeed"]),
        method=data.get("method", METHOD_REORDER),
        threshold=_threshold_from_mapping(data.get("threshold", "Default")),
    )


def with_master_seed(config: ExperimentConfig, master_seed: int) -> ExperimentConfig:
    return replace(config, master_seed=master_seed)
