"""Seeded samplers for the processes used in the decomposition experiments.

Each sampler consumes an :class:`~levysep.rng.RngStream` and is a pure
function of (parameters, stream): calling it twice yields identical output.
The draw order inside each sampler is part of the reproducibility contract
and is documented per function; golden regression vectors live in
``tests/golden/``.

Process specifications are small frozen dataclasses.  A composite observation
is ``X = Y + sigma * W`` with ``W`` a Brownian-type path (standard or the norm
of a 3-d Brownian motion) independent of the signal ``Y``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from .grid import GridPath, IncrementSeq
from .rng import RngStream


# ---------------------------------------------------------------------------
# Process specifications
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BrownianStd:
    """Standard Brownian motion."""


@dataclass(frozen=True)
class Bessel3:
    """Norm of a 3-dimensional standard Brownian motion."""


@dataclass(frozen=True)
class Stable:
    """Alpha-stable law in the one-parametrisation (S1), zero location.

    alpha = 2 is accepted and means Gaussian with variance 2*scale**2 per
    unit time.  At alpha = 1 with nonzero beta the sampler returns the S1
    Chambers-Mallows-Stuck output with zero shift.
    """

    alpha: float
    beta: float = 0.0
    scale: float = 1.0

    def __post_init__(self) -> None:
        if not 0.0 < self.alpha <= 2.0:
            raise ValueError(f"alpha must lie in (0, 2], got {self.alpha}")
        if not -1.0 <= self.beta <= 1.0:
            raise ValueError(f"beta must lie in [-1, 1], got {self.beta}")
        if self.scale <= 0.0:
            raise ValueError(f"scale must be positive, got {self.scale}")


@dataclass(frozen=True)
class VarianceGamma:
    """Brownian motion with drift subordinated by a gamma clock.

    Defaults give visibly jump-dominated paths; all three parameters are
    exposed on the CLI.
    """

    theta: float = -0.1
    sigma_vg: float = 0.3
    nu: float = 0.25

    def __post_init__(self) -> None:
        if self.sigma_vg <= 0.0:
            raise ValueError(f"sigma_vg must be positive, got {self.sigma_vg}")
        if self.nu <= 0.0:
            raise ValueError(f"nu must be positive, got {self.nu}")


@dataclass(frozen=True)
class NormalJumps:
    mean: float
    std: float

    def __post_init__(self) -> None:
        if self.std < 0.0:
            raise ValueError(f"jump std must be >= 0, got {self.std}")


@dataclass(frozen=True)
class FixedSign:
    """Every jump has the same signed size."""

    size: float

    def __post_init__(self) -> None:
        if self.size == 0.0:
            raise ValueError("jump size must be nonzero")


JumpLaw = Union[NormalJumps, FixedSign]


@dataclass(frozen=True)
class CompoundPoisson:
    rate: float
    jump_law: JumpLaw = field(default_factory=lambda: FixedSign(1.0))

    def __post_init__(self) -> None:
        if self.rate <= 0.0:
            raise ValueError(f"jump rate must be positive, got {self.rate}")


@dataclass(frozen=True)
class Zero:
    """The constant-zero signal."""


ProcessSpec = Union[BrownianStd, Bessel3, Stable, VarianceGamma, CompoundPoisson, Zero]
BrownianLaw = Union[BrownianStd, Bessel3]


@dataclass(frozen=True)
class CompositeSpec:
    """The observed process X = Y + sigma * W."""

    sigma: float
    brownian_law: BrownianLaw = field(default_factory=BrownianStd)
    signal: ProcessSpec = field(default_factory=Zero)

    def __post_init__(self) -> None:
        if self.sigma < 0.0:
            raise ValueError(f"sigma must be >= 0, got {self.sigma}")
        if not isinstance(self.brownian_law, (BrownianStd, Bessel3)):
            raise ValueError(f"unsupported Brownian law: {self.brownian_law!r}")


@dataclass(frozen=True)
class JumpRecord:
    """Exact jump times and sizes of a realised compound Poisson path."""

    times: np.ndarray
    sizes: np.ndarray

    def __post_init__(self) -> None:
        times = np.ascontiguousarray(self.times, dtype=np.float64)
        sizes = np.ascontiguousarray(self.sizes, dtype=np.float64)
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "sizes", sizes)
        if times.shape != sizes.shape or times.ndim != 1:
            raise ValueError("times and sizes must be 1-d arrays of equal length")
        if times.size:
            if not (times[0] > 0.0 and times[-1] < 1.0):
                raise ValueError("jump times must lie strictly inside (0, 1)")
            if np.any(np.diff(times) <= 0.0):
                raise ValueError("jump times must be strictly increasing")
            if np.any(sizes == 0.0):
                raise ValueError("jump sizes must be nonzero")


# ---------------------------------------------------------------------------
# Samplers
# ---------------------------------------------------------------------------

def sample_gaussian_increments(n: int, rng: RngStream) -> IncrementSeq:
    """n i.i.d. Normal(0, 1/n) increments of a standard Brownian motion.

    Draw order: one block of n standard normals, scaled by sqrt(1/n).
    """
    _check_level(n)
    g = rng.generator()
    return IncrementSeq(n, g.standard_normal(n) * math.sqrt(1.0 / n))


def _bessel3_components(n: int, rng: RngStream) -> np.ndarray:
    """The three underlying Brownian component paths, shape (3, n+1).

    Draw order: a (3, n) block of standard normals (component-major),
    scaled by sqrt(1/n) and cumulatively summed per component.
    """
    g = rng.generator()
    steps = g.standard_normal((3, n)) * math.sqrt(1.0 / n)
    paths = np.zeros((3, n + 1))
    np.cumsum(steps, axis=1, out=paths[:, 1:])
    return paths


def sample_bessel3_path(n: int, rng: RngStream) -> GridPath:
    """Norm of a 3-d standard Brownian motion on the grid, from 3n draws."""
    _check_level(n)
    comps = _bessel3_components(n, rng)
    return GridPath(n, np.sqrt(np.sum(comps * comps, axis=0)))


def _standard_stable(alpha: float, beta: float, u: np.ndarray, e: np.ndarray) -> np.ndarray:
    """Chambers-Mallows-Stuck transform to the unit-scale S1 law.

    u is uniform on (-pi/2, pi/2), e standard exponential.  The generic
    branch covers alpha = 2, where it reduces to Normal(0, 2); alpha = 1
    uses the dedicated logarithmic branch.
    """
    if alpha == 1.0:
        b = np.pi / 2 + beta * u
        return (2.0 / np.pi) * (b * np.tan(u) - beta * np.log((np.pi / 2) * e * np.cos(u) / b))
    t = beta * math.tan(math.pi * alpha / 2)
    shift = math.atan(t) / alpha
    prefactor = (1.0 + t * t) ** (1.0 / (2 * alpha))
    return (
        prefactor
        * np.sin(alpha * (u + shift))
        / np.cos(u) ** (1.0 / alpha)
        * (np.cos(u - alpha * (u + shift)) / e) ** ((1.0 - alpha) / alpha)
    )


def sample_stable_increments(
    n: int, alpha: float, beta: float, scale: float, rng: RngStream
) -> IncrementSeq:
    """n i.i.d. S1 alpha-stable increments with per-step scale scale*(1/n)**(1/alpha).

    Draw order: n uniforms on (-pi/2, pi/2), then n standard exponentials.
    """
    _check_level(n)
    spec = Stable(alpha, beta, scale)  # validates the parameter ranges
    g = rng.generator()
    u = g.uniform(-np.pi / 2, np.pi / 2, size=n)
    e = g.standard_exponential(n)
    step_scale = spec.scale * n ** (-1.0 / spec.alpha)
    return IncrementSeq(n, step_scale * _standard_stable(spec.alpha, spec.beta, u, e))


def sample_variance_gamma_increments(
    n: int, theta: float, sigma_vg: float, nu: float, rng: RngStream
) -> IncrementSeq:
    """Variance-gamma increments theta*G + sigma_vg*sqrt(G)*Z.

    G ~ Gamma(shape=(1/n)/nu, scale=nu) is the gamma time increment and Z a
    standard normal.  Draw order: n gamma variates, then n normals.
    """
    _check_level(n)
    spec = VarianceGamma(theta, sigma_vg, nu)
    g = rng.generator()
    clock = g.gamma(shape=(1.0 / n) / spec.nu, scale=spec.nu, size=n)
    z = g.standard_normal(n)
    return IncrementSeq(n, spec.theta * clock + spec.sigma_vg * np.sqrt(clock) * z)


def sample_compound_poisson(
    n: int, rate: float, jump_law: JumpLaw, rng: RngStream
) -> tuple[IncrementSeq, JumpRecord]:
    """Compound Poisson increments plus the exact jump record.

    Draw order: the Poisson count N, then N uniforms (sorted into jump
    times), then N jump sizes; sizes[i] belongs to the i-th sorted time.
    A jump landing exactly on a grid point i/n is booked to increment i.
    """
    _check_level(n)
    spec = CompoundPoisson(rate, jump_law)
    g = rng.generator()
    count = int(g.poisson(spec.rate))
    times = np.sort(g.uniform(0.0, 1.0, size=count))
    if isinstance(spec.jump_law, FixedSign):
        sizes = np.full(count, spec.jump_law.size)
    else:
        sizes = g.normal(spec.jump_law.mean, spec.jump_law.std, size=count)
    return _bin_jumps(times, sizes, n), JumpRecord(times, sizes)


def _bin_jumps(times: np.ndarray, sizes: np.ndarray, n: int) -> IncrementSeq:
    """Book each jump at time t in ((i-1)/n, i/n] to increment i.

    The half-open convention assigns a jump landing exactly on a grid point
    i/n (a probability-zero event) to increment i.
    """
    deltas = np.zeros(n)
    if len(times):
        idx = np.ceil(np.asarray(times) * n).astype(np.int64)
        np.add.at(deltas, idx - 1, np.asarray(sizes, dtype=np.float64))
    return IncrementSeq(n, deltas)


def sample_signal_increments(
    spec: ProcessSpec, n: int, rng: RngStream
) -> tuple[IncrementSeq, JumpRecord | None]:
    """Dispatch a signal specification to its sampler.

    Returns the increments and, for compound Poisson signals, the jump
    record (None otherwise).
    """
    if isinstance(spec, Zero):
        _check_level(n)
        return IncrementSeq(n, np.zeros(n)), None
    if isinstance(spec, Stable):
        return sample_stable_increments(n, spec.alpha, spec.beta, spec.scale, rng), None
    if isinstance(spec, VarianceGamma):
        return sample_variance_gamma_increments(n, spec.theta, spec.sigma_vg, spec.nu, rng), None
    if isinstance(spec, CompoundPoisson):
        increments, jumps = sample_compound_poisson(n, spec.rate, spec.jump_law, rng)
        return increments, jumps
    if isinstance(spec, BrownianStd):
        return sample_gaussian_increments(n, rng), None
    if isinstance(spec, Bessel3):
        from .grid import increments_of

        return increments_of(sample_bessel3_path(n, rng)), None
    raise ValueError(f"unsupported process spec: {spec!r}")


def sample_brownian_path(law: BrownianLaw, n: int, rng: RngStream) -> GridPath:
    """Sample the Brownian-type component of a composite observation."""
    if isinstance(law, Bessel3):
        return sample_bessel3_path(n, rng)
    if isinstance(law, BrownianStd):
        from .grid import path_of

        return path_of(sample_gaussian_increments(n, rng))
    raise ValueError(f"unsupported Brownian law: {law!r}")


def _check_level(n: int) -> None:
    if n < 1:
        raise ValueError(f"grid resolution must be >= 1, got {n}")
