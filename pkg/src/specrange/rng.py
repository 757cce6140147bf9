"""Seeded splitmix-style 64-bit generator.

Every randomized routine in the package draws from this generator rather
than from library RNGs, so that reports are reproducible from the seed
alone and do not depend on the numpy version in use.
"""

from __future__ import annotations

import math

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15


class SplitMix64:
    """Deterministic 64-bit stream with uniform/normal/sign helpers."""

    def __init__(self, seed: int):
        self._state = int(seed) & _MASK

    def next_u64(self) -> int:
        self._state = (self._state + _GAMMA) & _MASK
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return (z ^ (z >> 31)) & _MASK

    def uniform(self) -> float:
        """Uniform float in [0, 1) with 53 random bits."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def below(self, n: int) -> int:
        """Integer in [0, n)."""
        if n <= 0:
            raise ValueError("n must be positive")
        return self.next_u64() % n

    def sign(self) -> int:
        return 1 if (self.next_u64() >> 63) == 0 else -1

    def normal(self) -> float:
        # Box-Muller; u1 shifted away from 0 so the log is finite.
        u1 = (self.next_u64() >> 11) * (1.0 / (1 << 53))
        u2 = self.uniform()
        u1 = max(u1, 2.0 ** -53)
        return math.sqrt(-2.0 * math.log(u1)) * math.cos(2.0 * math.pi * u2)

    def complex_normal(self) -> complex:
        return complex(self.normal(), self.normal())

    def spawn_seed(self) -> int:
        """Fresh seed for a child stream (kept nonnegative for JSON)."""
        return self.next_u64() >> 1
