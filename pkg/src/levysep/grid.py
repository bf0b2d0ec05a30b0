"""Paths and increments on the uniform grid {i/n : i = 0..n}.

All processes in this package live on such grids and start at the origin.
A :class:`GridPath` stores the n+1 values, an :class:`IncrementSeq` the n
successive differences; the two representations convert losslessly for the
path scales produced here (see the round-trip tests).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class GridPath:
    """Values of a process at times i/n, i = 0..n; values[0] is always 0."""

    n: int
    values: np.ndarray

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"grid resolution must be >= 1, got {self.n}")
        values = np.ascontiguousarray(self.values, dtype=np.float64)
        object.__setattr__(self, "values", values)
        if values.shape != (self.n + 1,):
            raise ValueError(f"expected {self.n + 1} values, got shape {values.shape}")
        if values[0] != 0.0:
            raise ValueError("paths start at the origin: values[0] must be 0")


@dataclass(frozen=True)
class IncrementSeq:
    """The n increments of a grid path: deltas[i-1] = value(i/n) - value((i-1)/n)."""

    n: int
    deltas: np.ndarray

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"grid resolution must be >= 1, got {self.n}")
        deltas = np.ascontiguousarray(self.deltas, dtype=np.float64)
        object.__setattr__(self, "deltas", deltas)
        if deltas.shape != (self.n,):
            raise ValueError(f"expected {self.n} increments, got shape {deltas.shape}")


def path_of(increments: IncrementSeq) -> GridPath:
    """Cumulative sum of the increments, prefixed with the origin."""
    values = np.empty(increments.n + 1)
    values[0] = 0.0
    np.cumsum(increments.deltas, out=values[1:])
    return GridPath(increments.n, values)


def increments_of(path: GridPath) -> IncrementSeq:
    return IncrementSeq(path.n, np.diff(path.values))


def coarsen(path: GridPath, n: int) -> GridPath:
    """Restrict a level-N path to the subgrid of a divisor level n.

    Pure subsampling: output value at i/n is the input value at i/n,
    no interpolation.  The same realisation therefore serves every
    resolution level of an experiment.
    """
    if n < 1:
        raise ValueError(f"target level must be >= 1, got {n}")
    if path.n % n != 0:
        raise ValueError(f"target level {n} does not divide source level {path.n}")
    stride = path.n // n
    return GridPath(n, path.values[::stride].copy())


def compose(sigma: float, w: IncrementSeq, y: IncrementSeq) -> IncrementSeq:
    """Increments of sigma*W + Y from the component increments."""
    if w.n != y.n:
        raise ValueError(f"increment length mismatch: {w.n} != {y.n}")
    return IncrementSeq(w.n, sigma * w.deltas + y.deltas)
