"""Deterministic random-number streams.

Every sampler in this package is a pure function of its parameters and an
:class:`RngStream`.  A stream is identified by a ``(master_seed, stream_id)``
pair of 64-bit unsigned integers which keys a Philox-4x64 counter-based bit
generator.  Re-creating a stream always replays the same sequence, so results
are reproducible across runs, platforms and worker processes (numpy pins the
Philox algorithm; distribution algorithms are those of the installed numpy,
recorded in the golden files under ``tests/golden/``).

Stream ids for Monte Carlo experiments are derived from a replication index
and a short component tag via BLAKE2b, see :func:`derive_stream_id`.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

import numpy as np

_U64_MAX = 2**64 - 1


def derive_stream_id(replication: int, tag: str) -> int:
    """Map (replication index, component tag) to a 64-bit stream id.

    The id is the first 8 bytes, little-endian, of
    ``BLAKE2b-64("{replication}/{tag}")``.  Collisions between the handful of
    tags used per replication are astronomically unlikely.
    """
    if replication < 0:
        raise ValueError(f"replication index must be >= 0, got {replication}")
    digest = hashlib.blake2b(f"{replication}/{tag}".encode(), digest_size=8).digest()
    return int.from_bytes(digest, "little")


@dataclass(frozen=True)
class RngStream:
    """A named, replayable source of randomness.

    ``generator()`` returns a fresh numpy ``Generator`` positioned at the
    start of the stream, so a sampler called twice with the same stream
    produces identical output.  Do not share one ``Generator`` instance
    between threads; materialise one per consumer instead.
    """

    master_seed: int
    stream_id: int = 0

    def __post_init__(self) -> None:
        for name in ("master_seed", "stream_id"):
            value = getattr(self, name)
            if not 0 <= value <= _U64_MAX:
                raise ValueError(f"{name} must be an unsigned 64-bit integer, got {value}")

    def generator(self) -> np.random.Generator:
        return np.random.Generator(np.random.Philox(key=[self.master_seed, self.stream_id]))

    def child(self, replication: int, tag: str) -> "RngStream":
        """Stream for one component of one replication under this master seed."""
        return RngStream(self.master_seed, derive_stream_id(replication, tag))
