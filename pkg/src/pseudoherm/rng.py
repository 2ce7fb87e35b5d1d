"""Portable pseudo-random source for the model generators.

The generator is Marsaglia/Vigna **xorshift64***, seeded through one round
of **splitmix64** so that every 64-bit seed (including 0) gives a valid,
well-mixed state.  Every step is plain 64-bit integer arithmetic, so any
language can reproduce the exact stream:

    state  = splitmix64(seed + tag * 0x9E3779B97F4A7C15)   (0 -> 0x9E3779B97F4A7C15)
    next() : x ^= x >> 12; x ^= x << 25; x ^= x >> 27
             return x * 0x2545F4914F6CDD1D
    uniform()  = (next() >> 11) * 2**-53                      in [0, 1)
    normal()   = sqrt(-2 ln(1 - u1)) * cos(2 pi u2)           (u1 drawn first)

``numpy.random`` is deliberately not used: its bit streams are an
implementation detail of numpy.
"""

from __future__ import annotations

import math

import numpy as np

__all__ = ["XorShift64Star", "splitmix64"]

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def splitmix64(x: int) -> int:
    z = (x + _GOLDEN) & _MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


class XorShift64Star:
    """xorshift64* stream.  ``tag`` selects independent sub-streams of one seed."""

    def __init__(self, seed: int, tag: int = 0):
        if seed < 0 or seed > _MASK:
            raise ValueError("seed must be an unsigned 64-bit integer")
        state = splitmix64((seed + tag * _GOLDEN) & _MASK)
        self.state = state or _GOLDEN

    def next(self) -> int:
        x = self.state
        x ^= x >> 12
        x ^= (x << 25) & _MASK
        x ^= x >> 27
        self.state = x
        return (x * 0x2545F4914F6CDD1D) & _MASK

    def uniform(self, low: float = 0.0, high: float = 1.0) -> float:
        u = (self.next() >> 11) * 2.0**-53
        return low + (high - low) * u

    def normal(self) -> float:
        u1 = self.uniform()
        u2 = self.uniform()
        return math.sqrt(-2.0 * math.log(1.0 - u1)) * math.cos(2.0 * math.pi * u2)

    def complex_normal_matrix(self, n: int) -> np.ndarray:
        """Row-major ``n x n`` matrix, real part drawn before imaginary part;
        entries have unit variance."""
        vals = [self.normal() for _ in range(2 * n * n)]
        a = np.array(vals[0::2]) + 1j * np.array(vals[1::2])
        return a.reshape(n, n) / math.sqrt(2.0)
