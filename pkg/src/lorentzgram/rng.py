"""Deterministic random stream used by the generators.

Reproducibility across runs, platforms and languages matters more here than
statistical sophistication, so the stream is produced by a fixed 64-bit
shift-multiply generator (splitmix64) written out below rather than by a
library generator whose stream is an implementation detail:

    state <- (state + 0x9E3779B97F4A7C15) mod 2^64
    z <- state
    z <- ((z XOR (z >> 30)) * 0xBF58476D1CE4E5B9) mod 2^64
    z <- ((z XOR (z >> 27)) * 0x94D049BB133111EB) mod 2^64
    output <- z XOR (z >> 31)

Uniform doubles take the top 53 bits of an output word.  Gaussians come from
the Box-Muller transform applied to two consecutive uniforms.
"""

from __future__ import annotations

import math

import numpy as np

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


class SplitMix64:
    """The splitmix64 stream for a given integer seed."""

    def __init__(self, seed: int):
        self._state = int(seed) & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + _GAMMA) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
        z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
        return z ^ (z >> 31)

    def uniform(self) -> float:
        # top 53 bits, uniform on [0, 1)
        return (self.next_u64() >> 11) * 2.0**-53

    def uniform_in(self, lo: float, hi: float) -> float:
        return lo + (hi - lo) * self.uniform()

    def normal(self) -> float:
        # Box-Muller; the first uniform is shifted into (0, 1] so log is safe
        u1 = ((self.next_u64() >> 11) + 1) * 2.0**-53
        u2 = self.uniform()
        return math.sqrt(-2.0 * math.log(u1)) * math.cos(2.0 * math.pi * u2)

    def normals(self, k: int) -> np.ndarray:
        return np.array([self.normal() for _ in range(k)])

    def sign(self) -> int:
        return 1 if (self.next_u64() >> 63) == 0 else -1

    def choice(self, k: int) -> int:
        # rejection-free modulo is fine for the tiny k used here
        return self.next_u64() % k

    def unit_vector(self, k: int) -> np.ndarray:
        """Direction uniform on the Euclidean sphere in R^k."""
        while True:
            v = self.normals(k)
            norm = float(np.linalg.norm(v))
            if norm > 1e-6:
                return v / norm
