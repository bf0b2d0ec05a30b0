"""Separating the Brownian and jump parts of a discretely observed path.

Two methods operate on the n observed increments:

* rank reordering -- independently sampled normal increments are arranged
  in the rank order of the observed increments, giving a Brownian random
  walk whose bridge tracks the bridge of the true Brownian component;
* threshold filtering -- increments larger than a cutoff are dropped, the
  rest rescaled by 1/sigma, with the endpoint compensating the removed mass.

Both return the approximating path; recovery of the signal follows by
subtracting the approximated bridge from the observation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .grid import GridPath, IncrementSeq, path_of


class TiedIncrementsError(ValueError):
    """Raised when increments contain exact ties.

    Ties have probability zero for the continuous laws sampled here, so a
    tie almost always signals degenerate input (for example a constant
    path); surfacing beats breaking the order arbitrarily.
    """


@dataclass(frozen=True)
class ReorderResult:
    """Rank-reordering output: the approximating walk and the permutation used.

    permutation[i] is the (0-based) index of the fresh-normal increment
    assigned to position i; it is a bijection on 0..n-1.
    """

    w_approx: GridPath
    permutation: np.ndarray


@dataclass(frozen=True)
class ThresholdResult:
    """Threshold-filter output.

    kept_mask[i] is True iff |increment i| <= threshold; the approximating
    path has increment x_i / sigma where kept and 0 where filtered.
    """

    w_approx: GridPath
    kept_mask: np.ndarray
    threshold: float


def _sorted_order(deltas: np.ndarray, name: str, allow_ties: bool) -> np.ndarray:
    order = np.argsort(deltas, kind="stable")
    if not allow_ties:
        sorted_vals = deltas[order]
        if np.any(sorted_vals[1:] == sorted_vals[:-1]):
            raise TiedIncrementsError(
                f"exact ties in {name} increments; continuous data should never tie"
            )
    return order


def _scatter_tied_blocks(sorted_x: np.ndarray, order_w: np.ndarray) -> None:
    """Re-sort order_w by grid index inside each run of tied x values.

    Tied observations carry no order information, so the block of fresh
    increments they receive must not arrive value-sorted: that would force a
    monotone arrangement over the run and, for the huge runs produced by
    float quantisation after an enormous jump, a large spurious excursion.
    Grid order of the fresh indices is deterministic and carries no value
    structure.  Mutates order_w in place.
    """
    equal = sorted_x[1:] == sorted_x[:-1]
    if not np.any(equal):
        return
    run_starts = np.nonzero(equal & ~np.concatenate(([False], equal[:-1])))[0]
    run_ends = np.nonzero(equal & ~np.concatenate((equal[1:], [False])))[0] + 2
    for start, end in zip(run_starts, run_ends):
        order_w[start:end] = np.sort(order_w[start:end])


def rank_permutation(x: IncrementSeq, w_prime: IncrementSeq, *, ties: str = "error") -> np.ndarray:
    """Permutation matching the rank order of w_prime's increments to x's.

    Returns pi such that x.deltas[i] < x.deltas[j] iff
    w_prime.deltas[pi[i]] < w_prime.deltas[pi[j]].  Computed by double
    argsort in O(n log n).

    Exact ties raise :class:`TiedIncrementsError` by default.  Passing
    ties="stable" orders tied observations by grid position and scatters
    the fresh increments they receive back into grid order; observed paths
    can tie bitwise after an enormous jump, where increments are
    differences of huge path values and inherit their coarse float spacing.
    """
    if ties not in ("error", "stable"):
        raise ValueError(f"ties must be 'error' or 'stable', got {ties!r}")
    if x.n != w_prime.n:
        raise ValueError(f"increment length mismatch: {x.n} != {w_prime.n}")
    allow = ties == "stable"
    order_x = _sorted_order(x.deltas, "x", allow)
    order_w = _sorted_order(w_prime.deltas, "w_prime", allow)
    if allow:
        _scatter_tied_blocks(x.deltas[order_x], order_w)
    permutation = np.empty(x.n, dtype=np.int64)
    permutation[order_x] = order_w
    return permutation


def reorder_decompose(
    x: IncrementSeq, w_prime: IncrementSeq, *, ties: str = "error"
) -> ReorderResult:
    """Reorder the fresh increments by the observed ranks and sum them up.

    The output walk uses exactly the multiset of w_prime's increments, in
    an order whose ranks coincide with those of x's increments.
    """
    permutation = rank_permutation(x, w_prime, ties=ties)
    w_approx = path_of(IncrementSeq(x.n, w_prime.deltas[permutation]))
    return ReorderResult(w_approx, permutation)


def bridge_of(path: GridPath) -> GridPath:
    """Remove the straight line through the endpoint: value - (i/n) * value(1)."""
    t = np.arange(path.n + 1) / path.n
    return GridPath(path.n, path.values - t * path.values[-1])


def default_threshold(n: int) -> float:
    """The canonical cutoff log(n)/sqrt(n), valid at every jump activity."""
    if n < 2:
        raise ValueError(f"threshold defined for n >= 2, got {n}")
    return math.log(n) / math.sqrt(n)


def threshold_decompose(x: IncrementSeq, sigma: float, a_n: float) -> ThresholdResult:
    """Keep increments with |delta| <= a_n (boundary kept), rescale by 1/sigma."""
    if sigma <= 0.0:
        raise ValueError(f"sigma must be positive, got {sigma}")
    if a_n <= 0.0:
        raise ValueError(f"threshold must be positive, got {a_n}")
    kept = np.abs(x.deltas) <= a_n
    increments = np.where(kept, x.deltas / sigma, 0.0)
    return ThresholdResult(path_of(IncrementSeq(x.n, increments)), kept, a_n)


def check_threshold_schedule(n: int, a_n: float, sigma: float, beta_star: float) -> str:
    """Advisory finite-n diagnostic of a threshold choice.

    Returns "too_small" when n*a_n**2/(sigma**2*log n) falls below
    2 - beta_star, "too_large" when a_n exceeds n**-0.4 times a slowly
    varying allowance max(1, log n), and "ok" otherwise.  The allowance
    admits the canonical log(n)/sqrt(n) cutoff at practical n.
    """
    if n < 2:
        raise ValueError(f"diagnostic defined for n >= 2, got {n}")
    if not 0.0 <= beta_star <= 2.0:
        raise ValueError(f"beta_star must lie in [0, 2], got {beta_star}")
    log_n = math.log(n)
    if n * a_n**2 / (sigma**2 * log_n) < 2.0 - beta_star:
        return "too_small"
    if a_n * n**0.4 > max(1.0, log_n):
        return "too_large"
    return "ok"


def recover_signal(x: GridPath, sigma: float, w_bridge_approx: GridPath) -> GridPath:
    """Subtract the approximated Brownian bridge from the observation.

    The result approximates the signal plus an unidentifiable linear drift;
    its endpoint equals x's endpoint exactly since the bridge vanishes there.
    """
    if x.n != w_bridge_approx.n:
        raise ValueError(f"grid level mismatch: {x.n} != {w_bridge_approx.n}")
    if w_bridge_approx.values[-1] != 0.0:
        raise ValueError("w_bridge_approx must be a bridge (endpoints 0)")
    return GridPath(x.n, x.values - sigma * w_bridge_approx.values)


def recover_with_drift(x: IncrementSeq, sigma: float, a_n: float) -> GridPath:
    """Uncompensated threshold path, approximating W plus the drift over sigma.

    Meaningful when the signal has bounded variation (not enforced); this is
    the threshold filter's output without endpoint compensation.
    """
    return threshold_decompose(x, sigma, a_n).w_approx


def multivariate_reorder(
    x_components: list[IncrementSeq], w_prime: IncrementSeq
) -> list[ReorderResult]:
    """Apply the rank reordering per component, sharing one fresh walk.

    A single one-dimensional source of normal increments serves every
    component; the cross-component dependence is carried by the orderings.
    """
    for idx, component in enumerate(x_components):
        if component.n != w_prime.n:
            raise ValueError(
                f"component {idx} has length {component.n}, expected {w_prime.n}"
            )
    return [reorder_decompose(component, w_prime) for component in x_components]
