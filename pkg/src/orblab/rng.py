"""SplitMix64: a tiny portable 64-bit generator.

The algorithm (Steele, Lea & Flood 2014) is fully specified by the constants
below, so corpora generated here can be reproduced bit-for-bit by any
implementation that follows the same recipe:

* state advances by ``0x9E3779B97F4A7C15`` (mod 2**64);
* output is the state passed through the two xor-shift-multiply rounds;
* ``uniform()`` takes the top 53 bits, scaled by ``2**-53``;
* ``normal()`` uses the basic Box-Muller transform, one variate per call.
"""

from __future__ import annotations

import math

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15


def mix64(z: int) -> int:
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


def derive_seed(*parts: int) -> int:
    """Combine integers into one 64-bit seed (order-sensitive)."""
    h = 0
    for p in parts:
        h = mix64((h + _GAMMA + (p & _MASK)) & _MASK)
    return h


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + _GAMMA) & _MASK
        return mix64(self.state)

    def uniform(self, lo: float = 0.0, hi: float = 1.0) -> float:
        """Uniform float in ``[lo, hi)``."""
        u = (self.next_u64() >> 11) * (1.0 / (1 << 53))
        return lo + (hi - lo) * u

    def normal(self, mu: float = 0.0, sigma: float = 1.0) -> float:
        u1 = 1.0 - self.uniform()  # (0, 1], keeps log finite
        u2 = self.uniform()
        return mu + sigma * math.sqrt(-2.0 * math.log(u1)) * math.cos(2.0 * math.pi * u2)

    def randbelow(self, n: int) -> int:
        """Unbiased integer in ``[0, n)`` by rejection."""
        if n <= 0:
            raise ValueError("n must be positive")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            x = self.next_u64()
            if x < limit:
                return x % n
