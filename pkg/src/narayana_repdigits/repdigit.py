"""Concatenations of two repdigits: m1 copies of d1 followed by m2 copies of d2."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import groupby
from typing import Iterator, Optional


@dataclass(frozen=True, order=True)
class ConcatPattern:
    d1: int
    m1: int
    d2: int
    m2: int

    def __post_init__(self):
        if not 1 <= self.d1 <= 9:
            raise ValueError("leading digit d1 must be in 1..9")
        if not 0 <= self.d2 <= 9:
            raise ValueError("digit d2 must be in 0..9")
        if self.m1 < 1 or self.m2 < 1:
            raise ValueError("run lengths must be positive")

    @property
    def total_digits(self) -> int:
        return self.m1 + self.m2

    @property
    def is_pure_repdigit(self) -> bool:
        return self.d1 == self.d2

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.d1, self.m1, self.d2, self.m2)


def value(p: ConcatPattern) -> int:
    num = p.d1 * 10 ** (p.m1 + p.m2) - (p.d1 - p.d2) * 10 ** p.m2 - p.d2
    q, r = divmod(num, 9)
    assert r == 0
    return q


def decompose(N: int) -> Optional[ConcatPattern]:
    """Split N into at most two digit runs; pure repdigits split as (L-1, 1)."""
    if N < 10:
        return None
    runs = [(int(d), len(list(g))) for d, g in groupby(str(N))]
    if len(runs) == 1:
        d, length = runs[0]
        return ConcatPattern(d, length - 1, d, 1)
    if len(runs) == 2:
        (d1, m1), (d2, m2) = runs
        return ConcatPattern(d1, m1, d2, m2)
    return None


def enumerate_values(max_total_digits: int) -> Iterator[tuple[ConcatPattern, int]]:
    """Every pattern with m1 + m2 <= max_total_digits, ordered by length then pattern."""
    if max_total_digits < 2:
        raise ValueError("max_total_digits must be >= 2")
    for total in range(2, max_total_digits + 1):
        for m1 in range(1, total):
            for d1 in range(1, 10):
                for d2 in range(10):
                    p = ConcatPattern(d1, m1, d2, total - m1)
                    yield p, value(p)
