"""SplitMix64 generator with a per-index stream-splitting rule.

Colorings must be bit-identical across platforms and runs, so randomness goes
through this fixed 64-bit generator rather than the stdlib Mersenne Twister,
whose shuffle is not pinned across Python versions.

Stream rule: the stream for index i under seed s is SplitMix64 seeded with
``mix((s + (i + 1) * GOLDEN) mod 2^64)``.  Distinct (seed, index) pairs give
independent-looking streams and the rule is stable by construction.
"""

from __future__ import annotations

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15


def mix64(z: int) -> int:
    """The SplitMix64 output finalizer."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


class SplitMix64:
    """Standard SplitMix64: state advances by GOLDEN, output is mix64(state)."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN) & MASK64
        return mix64(self.state)

    def below(self, bound: int) -> int:
        """Uniform integer in [0, bound), by rejection (unbiased)."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        limit = (1 << 64) - ((1 << 64) % bound)
        while True:
            u = self.next_u64()
            if u < limit:
                return u % bound

    def shuffle(self, items: list) -> list:
        """In-place Fisher-Yates shuffle; returns the list for convenience."""
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]
        return items


def stream(seed: int, index: int) -> SplitMix64:
    """The documented per-index stream under a master seed."""
    return SplitMix64(mix64((seed + (index + 1) * GOLDEN) & MASK64))
