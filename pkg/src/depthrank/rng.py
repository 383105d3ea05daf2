"""Deterministic pseudo-random number generator for datasets and training.

Every random draw in this package flows through :class:`SplitMix64`, a
64-bit counter-based generator (state advances by a fixed odd constant,
the output is a bijective bit-mix of the state).  The algorithm is fully
specified here, so the integer stream is reproducible bit-for-bit from a
seed on any platform, independent of Python or numpy RNG internals.

Derived floating-point streams (uniforms, normals) use only IEEE-754
double operations plus libm ``log``/``sqrt``/``cos``/``sin``; they are
bit-stable across runs on a given platform, which is what the
reproducibility contract and the byte-identity tests rely on.

Scalar draws and block draws are interchangeable: ``u64_block(n)``
produces exactly the same values as ``n`` calls to ``next_u64``.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import InvalidInputError

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB

# 2^-53; (u64 >> 11) * _TO_DOUBLE covers [0, 1) on an even grid.
_TO_DOUBLE = 1.0 / 9007199254740992.0


def _mix(z: int) -> int:
    z = (z ^ (z >> 30)) * _MIX1 & _MASK64
    z = (z ^ (z >> 27)) * _MIX2 & _MASK64
    return z ^ (z >> 31)


class SplitMix64:
    """Seeded splitmix64 stream with scalar and vectorized output paths."""

    def __init__(self, seed: int):
        if not isinstance(seed, int) or seed < 0 or seed > _MASK64:
            raise InvalidInputError(f"seed must be an integer in [0, 2^64): {seed!r}")
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + _GAMMA) & _MASK64
        return _mix(self._state)

    def u64_block(self, count: int) -> np.ndarray:
        """Next ``count`` outputs as a uint64 array, advancing the state once per value."""
        if count < 0:
            raise InvalidInputError(f"count must be >= 0: {count}")
        base = self._state
        self._state = (self._state + count * _GAMMA) & _MASK64
        z = (np.uint64(base) + np.uint64(_GAMMA) * np.arange(1, count + 1, dtype=np.uint64))
        z = (z ^ (z >> np.uint64(30))) * np.uint64(_MIX1)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX2)
        return z ^ (z >> np.uint64(31))

    def uniform(self) -> float:
        """One double in [0, 1)."""
        return (self.next_u64() >> 11) * _TO_DOUBLE

    def uniforms(self, count: int) -> np.ndarray:
        """``count`` doubles in [0, 1)."""
        return ((self.u64_block(count) >> np.uint64(11)).astype(np.float64)) * _TO_DOUBLE

    def normals(self, count: int) -> np.ndarray:
        """``count`` standard normals via Box-Muller.

        Consumes ``2 * ceil(count / 2)`` integer draws; an odd request
        discards the second member of the final pair.
        """
        if count < 0:
            raise InvalidInputError(f"count must be >= 0: {count}")
        pairs = (count + 1) // 2
        if pairs == 0:
            return np.empty(0, dtype=np.float64)
        raw = self.u64_block(2 * pairs)
        # u1 in (0, 1] so log(u1) is finite.
        u1 = ((raw[0::2] >> np.uint64(11)).astype(np.float64) + 1.0) * _TO_DOUBLE
        u2 = (raw[1::2] >> np.uint64(11)).astype(np.float64) * _TO_DOUBLE
        radius = np.sqrt(-2.0 * np.log(u1))
        theta = (2.0 * math.pi) * u2
        out = np.empty(2 * pairs, dtype=np.float64)
        out[0::2] = radius * np.cos(theta)
        out[1::2] = radius * np.sin(theta)
        return out[:count]

    def below(self, bound: int) -> int:
        """One integer uniform on [0, bound).

        Uses the modulo reduction; for the small bounds used here the bias
        is at most bound / 2^64 and the result is identical everywhere.
        """
        if bound <= 0:
            raise InvalidInputError(f"bound must be positive: {bound}")
        return self.next_u64() % bound

    def below_block(self, bounds: np.ndarray) -> np.ndarray:
        """Elementwise ``u64 % bounds`` for an array of positive bounds."""
        bounds = np.asarray(bounds, dtype=np.uint64)
        if bounds.size and int(bounds.min()) <= 0:
            raise InvalidInputError("all bounds must be positive")
        return self.u64_block(bounds.size) % bounds

    def permutation(self, n: int) -> np.ndarray:
        """Fisher-Yates permutation of ``range(n)``."""
        if n < 0:
            raise InvalidInputError(f"n must be >= 0: {n}")
        out = np.arange(n, dtype=np.intp)
        if n < 2:
            return out
        draws = self.below_block(np.arange(n, 1, -1, dtype=np.uint64))
        for i in range(n - 1):
            j = i + int(draws[i])
            out[i], out[j] = out[j], out[i]
        return out
