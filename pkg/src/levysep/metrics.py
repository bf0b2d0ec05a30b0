"""Error functionals and reference limit objects for the experiments."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .decompose import bridge_of
from .grid import GridPath, IncrementSeq
from .sim import JumpRecord


@dataclass(frozen=True)
class RateFit:
    """Ordinary least squares of log(error) on log(level)."""

    slope: float
    intercept: float
    r_squared: float


def sup_bridge_error(w_fine: GridPath, w_approx: GridPath) -> float:
    """Largest fine-grid gap between the true and the approximated bridge.

    The level-n approximation is evaluated at fine times t by left-constant
    extension, i.e. at floor(t*n)/n.  Requires the coarse level to divide
    the fine one.
    """
    if w_fine.n % w_approx.n != 0:
        raise ValueError(f"level {w_approx.n} does not divide fine level {w_fine.n}")
    fine_bridge = bridge_of(w_fine).values
    approx_bridge = bridge_of(w_approx).values
    stride = w_fine.n // w_approx.n
    coarse_at_fine = approx_bridge[np.arange(w_fine.n + 1) // stride]
    return float(np.max(np.abs(fine_bridge - coarse_at_fine)))


def cpp_limit_process(jumps: JumpRecord, grid: int) -> GridPath:
    """The sawtooth limit sum_i sign(J_i) * (t - 1{T_i <= t}) on a grid.

    Only the signs of the jump sizes enter; the path starts and ends at 0.
    """
    if grid < 1:
        raise ValueError(f"grid resolution must be >= 1, got {grid}")
    t = np.arange(grid + 1) / grid
    values = np.zeros(grid + 1)
    for time, size in zip(jumps.times, jumps.sizes):
        values += math.copysign(1.0, size) * (t - (time <= t))
    return GridPath(grid, values)


def scaled_cpp_error(w_fine: GridPath, w_approx: GridPath) -> GridPath:
    """Skeleton error rescaled by sqrt(n / (2 log n)), as a level-n path.

    value[k] = sqrt(n/(2 log n)) * (W(k/n) - A(k/n) - (W(1) - A(1)) * k/n)
    where A is the level-n approximation and W(k/n) comes from the fine
    path's skeleton.  Both endpoints vanish by construction.
    """
    n = w_approx.n
    if n < 3:
        raise ValueError(f"log-scaling degenerate below n = 3, got {n}")
    if w_fine.n % n != 0:
        raise ValueError(f"level {n} does not divide fine level {w_fine.n}")
    skeleton = w_fine.values[:: w_fine.n // n]
    t = np.arange(n + 1) / n
    gap = skeleton - w_approx.values - (w_fine.values[-1] - w_approx.values[-1]) * t
    return GridPath(n, math.sqrt(n / (2.0 * math.log(n))) * gap)


def fit_rate(pairs: list[tuple[int, float]]) -> RateFit:
    """OLS fit of log(mean error) against log(level).

    Needs at least two distinct levels and strictly positive errors.  With
    zero residual variation in the responses the fit is reported as exact
    (r_squared = 1).
    """
    if len({level for level, _ in pairs}) < 2:
        raise ValueError("need at least two distinct levels to fit a rate")
    if any(error <= 0.0 for _, error in pairs):
        raise ValueError("errors must be positive for a log-log fit")
    log_n = np.log([level for level, _ in pairs])
    log_e = np.log([error for _, error in pairs])
    x_centered = log_n - log_n.mean()
    slope = float(np.dot(x_centered, log_e - log_e.mean()) / np.dot(x_centered, x_centered))
    intercept = float(log_e.mean() - slope * log_n.mean())
    residuals = log_e - (intercept + slope * log_n)
    total = float(np.sum((log_e - log_e.mean()) ** 2))
    r_squared = 1.0 if total == 0.0 else 1.0 - float(np.sum(residuals**2)) / total
    return RateFit(slope, intercept, r_squared)


def cross_variation(a: IncrementSeq, b: IncrementSeq) -> float:
    """Sum of the products of paired increments."""
    if a.n != b.n:
        raise ValueError(f"increment length mismatch: {a.n} != {b.n}")
    return float(np.dot(a.deltas, b.deltas))
