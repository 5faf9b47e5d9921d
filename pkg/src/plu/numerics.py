"""Seeded random streams and the finite-difference probe.

The generator is SplitMix64: a 64-bit counter advanced by the golden-ratio
increment and passed through a fixed mixing function. Every output bit is
determined by the seed, so a stream can be reproduced in any language from
the constants below.

Uniforms take the top 53 bits of each output (``(x >> 11) * 2**-53``), so
they lie in [0, 1). Normals use the Box-Muller transform on two consecutive
uniforms, returning both variates (cosine one first).

Independent purposes draw from child streams created with :meth:`Rng.derive`
using the offsets in :data:`STREAMS`. A child seed is the first SplitMix64
output of ``seed + offset * GOLDEN``.
"""

from __future__ import annotations

import math
from typing import Callable

import numpy as np

MASK64 = 0xFFFFFFFFFFFFFFFF
GOLDEN = 0x9E3779B97F4A7C15
_MUL1 = 0xBF58476D1CE4E5B9
_MUL2 = 0x94D049BB133111EB
_INV_2_53 = 1.0 / (1 << 53)

# Stream offsets for Rng.derive. Never reuse an offset for a second purpose.
STREAMS = {
    "weights": 1,
    "data": 2,
    "gradcheck": 3,
    "probes": 4,
}


def _mix(z: int) -> int:
    z = ((z ^ (z >> 30)) * _MUL1) & MASK64
    z = ((z ^ (z >> 27)) * _MUL2) & MASK64
    return z ^ (z >> 31)


class Rng:
    """SplitMix64 generator. Single owner, not thread-safe."""

    def __init__(self, seed: int):
        self.seed = int(seed) & MASK64
        self.state = self.seed
        self._spare: float | None = None

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN) & MASK64
        return _mix(self.state)

    def next_uniform(self) -> float:
        return (self.next_u64() >> 11) * _INV_2_53

    def next_normal(self) -> float:
        if self._spare is not None:
            z, self._spare = self._spare, None
            return z
        u1 = 1.0 - self.next_uniform()  # (0, 1], keeps log finite
        u2 = self.next_uniform()
        r = math.sqrt(-2.0 * math.log(u1))
        self._spare = r * math.sin(2.0 * math.pi * u2)
        return r * math.cos(2.0 * math.pi * u2)

    def uniform(self, low: float, high: float, size: int) -> np.ndarray:
        return np.array([low + (high - low) * self.next_uniform() for _ in range(size)])

    def normal(self, size: int, sigma: float = 1.0) -> np.ndarray:
        return np.array([sigma * self.next_normal() for _ in range(size)])

    def derive(self, stream: str | int) -> "Rng":
        offset = STREAMS[stream] if isinstance(stream, str) else int(stream)
        return Rng(_mix((self.seed + offset * GOLDEN) & MASK64))


def rng_new(seed: int) -> Rng:
    return Rng(seed)


class UnstableProbeError(ArithmeticError):
    """A finite-difference probe hit a non-finite function value."""


def central_diff(f: Callable[[float], float], x: float, h: float = 1e-5) -> float:
    """Symmetric difference quotient ``(f(x+h) - f(x-h)) / 2h``."""
    if not h > 0:
        raise ValueError(f"step must be positive, got {h}")
    fp = float(f(x + h))
    fm = float(f(x - h))
    if not (math.isfinite(fp) and math.isfinite(fm)):
        raise UnstableProbeError(f"non-finite value probing x={x!r} with h={h!r}")
    return (fp - fm) / (2.0 * h)
