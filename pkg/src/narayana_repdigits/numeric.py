"""Certified real arithmetic on intervals with dyadic endpoints.

Endpoints are MPFR numbers (integer mantissa times a power of two).  Every
operation rounds the lower endpoint toward -inf and the upper endpoint toward
+inf, so the exact mathematical result is always enclosed.  MPFR's primitives
are correctly rounded, which makes `log`, `sqrt` and `**` directed-rounding
exact as well.
"""

from __future__ import annotations

import decimal
import math
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Callable, Iterator, Optional, Union

import gmpy2
from gmpy2 import mpfr, mpq

Rational = Union[int, Fraction]


class NumericError(Exception):
    """Base class for failures of certified computation."""


class DomainError(NumericError, ValueError):
    pass


class ThreeRealRootsError(DomainError):
    pass


class AmbiguityError(NumericError):
    """An enclosure is too wide to decide the requested discrete quantity."""


class EscalationError(NumericError):
    """Precision escalation reached ``max_bits`` without meeting the target."""

    def __init__(self, message: str, best: Optional["RealInterval"] = None):
        super().__init__(message)
        self.best = best


@dataclass(frozen=True)
class PrecisionBudget:
    working_bits: int = 256
    max_bits: int = 16384
    escalation_factor: int = 2

    def __post_init__(self):
        if self.working_bits < 2 or self.max_bits < 2:
            raise ValueError("precision must be at least 2 bits")
        if self.working_bits > self.max_bits:
            raise ValueError("working_bits exceeds max_bits")
        if self.escalation_factor < 2:
            raise ValueError("escalation_factor must be >= 2")

    def schedule(self, start: Optional[int] = None) -> Iterator[int]:
        """Yield increasing precisions from ``start`` up to and including max_bits."""
        bits = min(max(start or self.working_bits, self.working_bits), self.max_bits)
        while True:
            yield bits
            if bits >= self.max_bits:
                return
            bits = min(bits * self.escalation_factor, self.max_bits)

    def with_bits(self, bits: int) -> "PrecisionBudget":
        return replace(self, working_bits=min(bits, self.max_bits))


DEFAULT_BUDGET = PrecisionBudget()


_EXACT_TYPES = (int, Fraction, type(mpq(0)), type(mpfr(0)), type(gmpy2.mpz(0)))


def _down(bits: int):
    return gmpy2.context(precision=bits, round=gmpy2.RoundDown)


def _up(bits: int):
    return gmpy2.context(precision=bits, round=gmpy2.RoundUp)


def _neg(x: mpfr) -> mpfr:
    # gmpy2 rounds even negation to the ambient context precision
    with gmpy2.context(precision=max(x.precision, 2)):
        return -x


def _to_mpq(x) -> mpq:
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    return mpq(x)


def _to_fraction(x) -> Fraction:
    n, d = mpq(x).as_integer_ratio()
    return Fraction(int(n), int(d))


def to_decimal(x, digits: int = 30, upward: bool = False) -> str:
    """Round an exact rational/dyadic value to ``digits`` significant decimals, directed."""
    q = _to_fraction(x)
    ctx = decimal.Context(
        prec=digits, rounding=decimal.ROUND_CEILING if upward else decimal.ROUND_FLOOR
    )
    d = ctx.divide(decimal.Decimal(q.numerator), decimal.Decimal(q.denominator))
    return format(d, "f") if abs(d.adjusted()) < 40 else str(d)


@dataclass(frozen=True)
class RealInterval:
    lo: mpfr
    hi: mpfr
    bits: int = DEFAULT_BUDGET.working_bits

    def __post_init__(self):
        if not self.lo <= self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    # -- construction -------------------------------------------------
    @classmethod
    def exact(cls, x, bits: int = DEFAULT_BUDGET.working_bits) -> "RealInterval":
        """Enclose a rational ``x``; the result is a point when x is dyadic and fits."""
        q = _to_mpq(x)
        with _down(bits):
            lo = mpfr(q)
        with _up(bits):
            hi = mpfr(q)
        return cls(lo, hi, bits)

    @classmethod
    def hull(cls, a, b, bits: int = DEFAULT_BUDGET.working_bits) -> "RealInterval":
        a, b = _to_mpq(a), _to_mpq(b)
        if a > b:
            a, b = b, a
        with _down(bits):
            lo = mpfr(a)
        with _up(bits):
            hi = mpfr(b)
        return cls(lo, hi, bits)

    @classmethod
    def from_dyadic(cls, lo: Fraction, hi: Fraction, bits: int) -> "RealInterval":
        """Exact enclosure of dyadic rationals, widening MPFR precision if needed."""
        need = max(bits, _dyadic_bits(lo), _dyadic_bits(hi))
        return cls(mpfr(_to_mpq(lo), need), mpfr(_to_mpq(hi), need), bits)

    def _coerce(self, other) -> "RealInterval":
        if isinstance(other, RealInterval):
            return other
        if isinstance(other, _EXACT_TYPES):
            return RealInterval.exact(other, self.bits)
        return NotImplemented

    # -- accessors ----------------------------------------------------
    @property
    def lo_q(self) -> Fraction:
        return _to_fraction(self.lo)

    @property
    def hi_q(self) -> Fraction:
        return _to_fraction(self.hi)

    @property
    def width(self) -> Fraction:
        return self.hi_q - self.lo_q

    @property
    def mid(self) -> Fraction:
        return (self.lo_q + self.hi_q) / 2

    def contains(self, x) -> bool:
        if isinstance(x, RealInterval):
            return self.lo <= x.lo and x.hi <= self.hi
        q = _to_mpq(x)
        return self.lo <= q <= self.hi

    def is_positive(self) -> bool:
        return self.lo > 0

    def is_negative(self) -> bool:
        return self.hi < 0

    def lies_below(self, x) -> bool:
        """True iff every point of the enclosure is strictly below ``x``."""
        if isinstance(x, RealInterval):
            return self.hi < x.lo
        return self.hi < _to_mpq(x)

    def lies_above(self, x) -> bool:
        if isinstance(x, RealInterval):
            return self.lo > x.hi
        return self.lo > _to_mpq(x)

    def intersect(self, other: "RealInterval") -> "RealInterval":
        lo = max(self.lo, other.lo)
        hi = min(self.hi, other.hi)
        if lo > hi:
            raise NumericError("refinement produced a disjoint enclosure")
        return RealInterval(lo, hi, max(self.bits, other.bits))

    def floor(self) -> int:
        a, b = math.floor(self.lo_q), math.floor(self.hi_q)
        if a != b:
            raise AmbiguityError(f"floor undecided on [{self.lo}, {self.hi}]")
        return a

    def decimal(self, digits: int = 30) -> tuple[str, str]:
        return to_decimal(self.lo, digits), to_decimal(self.hi, digits, upward=True)

    def __repr__(self):
        lo, hi = self.decimal(20)
        return f"RealInterval[{lo}, {hi}]"

    # -- arithmetic ---------------------------------------------------
    def __neg__(self):
        return RealInterval(_neg(self.hi), _neg(self.lo), self.bits)

    def __abs__(self):
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return RealInterval(mpfr(0), max(_neg(self.lo), self.hi), self.bits)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        bits = max(self.bits, other.bits)
        with _down(bits):
            lo = self.lo + other.lo
        with _up(bits):
            hi = self.hi + other.hi
        return RealInterval(lo, hi, bits)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        bits = max(self.bits, other.bits)
        pairs = [(self.lo, other.lo), (self.lo, other.hi), (self.hi, other.lo), (self.hi, other.hi)]
        with _down(bits):
            lo = min(x * y for x, y in pairs)
        with _up(bits):
            hi = max(x * y for x, y in pairs)
        return RealInterval(lo, hi, bits)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.lo <= 0 <= other.hi:
            raise DomainError("division by an interval containing zero")
        bits = max(self.bits, other.bits)
        pairs = [(self.lo, other.lo), (self.lo, other.hi), (self.hi, other.lo), (self.hi, other.hi)]
        with _down(bits):
            lo = min(x / y for x, y in pairs)
        with _up(bits):
            hi = max(x / y for x, y in pairs)
        return RealInterval(lo, hi, bits)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise TypeError("only integer powers are supported")
        if n == 0:
            return RealInterval(mpfr(1), mpfr(1), self.bits)
        if n < 0:
            return 1 / (self ** -n)
        lo, hi = self.lo, self.hi
        if n % 2 == 0 and hi <= 0:
            lo, hi = _neg(hi), _neg(lo)
        elif n % 2 == 0 and lo < 0:
            with _up(self.bits):
                top = max(_neg(lo), hi) ** n
            return RealInterval(mpfr(0), top, self.bits)
        with _down(self.bits):
            a = lo ** n
        with _up(self.bits):
            b = hi ** n
        return RealInterval(a, b, self.bits)

    def sqrt(self) -> "RealInterval":
        if self.lo < 0:
            raise DomainError("square root of an interval reaching below zero")
        with _down(self.bits):
            lo = gmpy2.sqrt(self.lo)
        with _up(self.bits):
            hi = gmpy2.sqrt(self.hi)
        return RealInterval(lo, hi, self.bits)

    def log(self) -> "RealInterval":
        return ln_interval(self)

    def with_bits(self, bits: int) -> "RealInterval":
        return replace(self, bits=bits)


Recipe = Callable[[int], RealInterval]


@dataclass(frozen=True)
class ComplexPairEnclosure:
    """Enclosure of a complex-conjugate pair x +/- iy through its real and imaginary parts."""

    real_part: RealInterval
    imag_part: RealInterval

    def modulus(self) -> RealInterval:
        return (self.real_part ** 2 + self.imag_part ** 2).sqrt()


def _dyadic_bits(q: Fraction) -> int:
    return max(abs(q.numerator).bit_length(), 2)


def ln_interval(x: RealInterval, budget: Optional[PrecisionBudget] = None) -> RealInterval:
    if x.lo <= 0:
        raise DomainError("logarithm of a non-positive enclosure")
    bits = budget.working_bits if budget is not None else x.bits
    with _down(bits):
        lo = gmpy2.log(x.lo)
    with _up(bits):
        hi = gmpy2.log(x.hi)
    return RealInterval(lo, hi, bits)


def dist_to_nearest_int(x: RealInterval) -> RealInterval:
    """Enclosure of min over integers n of |x - n|."""
    if x.width >= Fraction(1, 4):
        raise AmbiguityError("enclosure too wide for the nearest-integer distance")
    lo, hi = x.lo_q, x.hi_q

    def dist(y: Fraction) -> Fraction:
        f = y - math.floor(y)
        return min(f, 1 - f)

    a, b = sorted((dist(lo), dist(hi)))
    if math.ceil(lo) <= hi:
        a = Fraction(0)
    half = Fraction(1, 2)
    if math.ceil(lo - half) <= hi - half:
        b = half
    return RealInterval.hull(a, b, x.bits)


def refine(recipe: Recipe, target_width, budget: PrecisionBudget = DEFAULT_BUDGET) -> RealInterval:
    """Recompute ``recipe`` at growing precision until the enclosure is narrow enough.

    Successive enclosures are intersected, so the result is never wider than
    any single evaluation.
    """
    target = _to_fraction(_to_mpq(target_width))
    best = None
    for bits in budget.schedule():
        x = recipe(bits)
        best = x if best is None else best.intersect(x)
        if best.width <= target:
            return best
    raise EscalationError(
        f"could not reach width {float(target):.3g} within {budget.max_bits} bits", best
    )


def _cubic_sign(c: tuple[int, int, int, int], x: Fraction) -> int:
    n, d = x.numerator, x.denominator
    v = ((c[0] * n + c[1] * d) * n + c[2] * d * d) * n + c[3] * d * d * d
    return (v > 0) - (v < 0)


def cubic_discriminant(c3: int, c2: int, c1: int, c0: int) -> int:
    return (
        18 * c3 * c2 * c1 * c0
        - 4 * c2 ** 3 * c0
        + c2 ** 2 * c1 ** 2
        - 4 * c3 * c1 ** 3
        - 27 * c3 ** 2 * c0 ** 2
    )


def isolate_cubic_roots(
    c3: int, c2: int, c1: int, c0: int, budget: PrecisionBudget = DEFAULT_BUDGET
) -> tuple[RealInterval, ComplexPairEnclosure]:
    """Enclose the real root and the complex pair of c3 x^3 + c2 x^2 + c1 x + c0.

    The real root is bracketed by exact sign evaluation at dyadic points.
    Newton iterates only propose brackets; a bracket is accepted after the
    exact sign check, with bisection as the fallback.
    """
    if c3 == 0:
        raise DomainError("leading coefficient must be nonzero")
    disc = cubic_discriminant(c3, c2, c1, c0)
    if disc > 0:
        raise ThreeRealRootsError("cubic has three distinct real roots")
    if disc == 0:
        raise ThreeRealRootsError("cubic has a repeated root")
    if c3 < 0:
        c3, c2, c1, c0 = -c3, -c2, -c1, -c0
    coeffs = (c3, c2, c1, c0)
    bits = budget.working_bits
    target = Fraction(1, 2 ** bits)

    bound = 1 + max(abs(c2), abs(c1), abs(c0)) // c3 + 1
    lo, hi = Fraction(-bound), Fraction(bound)
    while hi - lo > Fraction(1, 2 ** 20):
        lo, hi = _bisect(coeffs, lo, hi)

    prec = bits + 32 + bound.bit_length()
    with gmpy2.context(precision=prec):
        x = mpfr(_to_mpq((lo + hi) / 2))
        for _ in range(4 * max(bits, 64).bit_length() + 8):
            f = ((c3 * x + c2) * x + c1) * x + c0
            df = (3 * c3 * x + 2 * c2) * x + c1
            if df == 0:
                break
            step = f / df
            x -= step
            if step == 0 or abs(step) < mpfr(2) ** -(prec - 4):
                break
    half = Fraction(1, 2 ** (bits + 1))
    guess = _to_fraction(x)
    # round the Newton iterate to the dyadic grid of the target
    guess = Fraction(round(guess * 2 ** (bits + 1)), 2 ** (bits + 1))
    cand_lo, cand_hi = guess - half, guess + half
    if lo <= cand_lo and cand_hi <= hi and _cubic_sign(coeffs, cand_lo) < 0 < _cubic_sign(coeffs, cand_hi):
        lo, hi = cand_lo, cand_hi
    while hi - lo > target:
        lo, hi = _bisect(coeffs, lo, hi)

    root = RealInterval.from_dyadic(lo, hi, bits)
    s = -Fraction(c2, c3) - root  # sum of the complex pair
    real_part = s / 2
    prod = Fraction(c1, c3) - root * s  # product of the pair = |z|^2
    imag_sq = prod - real_part ** 2
    if imag_sq.lo <= 0:
        imag_sq = RealInterval(max(imag_sq.lo, mpfr(0)), imag_sq.hi, imag_sq.bits)
    return root, ComplexPairEnclosure(real_part, imag_sq.sqrt())


def _bisect(coeffs, lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    m = (lo + hi) / 2
    s = _cubic_sign(coeffs, m)
    if s == 0:
        return m, m
    return (m, hi) if s < 0 else (lo, m)
