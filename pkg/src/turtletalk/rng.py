"""PCG32 random number generator.

A tiny, portable generator so every run of a program is reproducible from
its seed, in any implementation language. Seeding follows the reference
recipe: state = 0, increment = (stream << 1) | 1, step, add the seed,
step again. Sessions use stream 54 unless configured otherwise.

Derived draws are defined here once and replicated by the test oracle:
`below(n)` is `next_u32() % n` and `uniform(lo, hi)` is
`lo + (hi - lo) * next_u32() / 2**32`.
"""

from __future__ import annotations

from dataclasses import dataclass

_MULTIPLIER = 6364136223846793005
_MASK64 = (1 << 64) - 1
_MASK32 = (1 << 32) - 1

DEFAULT_STREAM = 54


@dataclass
class Pcg32:
    state: int
    inc: int

    def __init__(self, seed: int, stream: int = DEFAULT_STREAM):
        self.inc = ((stream << 1) | 1) & _MASK64
        self.state = 0
        self.next_u32()
        self.state = (self.state + (seed & _MASK64)) & _MASK64
        self.next_u32()

    def next_u32(self) -> int:
        old = self.state
        self.state = (old * _MULTIPLIER + self.inc) & _MASK64
        xorshifted = (((old >> 18) ^ old) >> 27) & _MASK32
        rot = old >> 59
        return ((xorshifted >> rot) | (xorshifted << ((-rot) & 31))) & _MASK32

    def below(self, n: int) -> int:
        """Random integer in [0, n); n must be positive."""
        if n <= 0:
            raise ValueError("below() needs a positive bound")
        return self.next_u32() % n

    def uniform(self, lo: float, hi: float) -> float:
        """Random float in [lo, hi) with 32-bit resolution."""
        return lo + (hi - lo) * (self.next_u32() / 2.0**32)

    def getstate(self) -> tuple[int, int]:
        return (self.state, self.inc)

    def setstate(self, state: tuple[int, int]) -> None:
        self.state, self.inc = state
