"""Narayana's cow sequence: exact terms, Binet data and growth estimates."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .numeric import (
    DEFAULT_BUDGET,
    ComplexPairEnclosure,
    EscalationError,
    PrecisionBudget,
    RealInterval,
    isolate_cubic_roots,
    ln_interval,
)


@dataclass(frozen=True)
class RecurrenceDef:
    """x(k+order) = sum_i coefficients[i] * x(k+order-1-i)."""

    order: int = 3
    coefficients: tuple[int, ...] = (1, 0, 1)
    initial_terms: tuple[int, ...] = (0, 1, 1)

    def __post_init__(self):
        if len(self.coefficients) != self.order or len(self.initial_terms) != self.order:
            raise ValueError("coefficients and initial_terms must have length == order")
        if not all(isinstance(c, int) for c in self.coefficients + self.initial_terms):
            raise TypeError("recurrence data must be exact integers")


NARAYANA = RecurrenceDef()

# characteristic polynomial x^3 - x^2 - 1 and the minimal polynomial of a
CHAR_POLY = (1, -1, 0, -1)
A_MIN_POLY = (31, 0, -3, -1)


def term(n: int, rec: RecurrenceDef = NARAYANA) -> int:
    if n < 0:
        raise ValueError("index must be non-negative")
    window = list(rec.initial_terms)
    if n < rec.order:
        return window[n]
    for _ in range(n - rec.order + 1):
        nxt = sum(c * x for c, x in zip(rec.coefficients, reversed(window)))
        window = window[1:] + [nxt]
    return window[-1]


def terms(count: int, rec: RecurrenceDef = NARAYANA) -> list[int]:
    """The first ``count`` terms."""
    out = list(rec.initial_terms[:count])
    while len(out) < count:
        out.append(sum(c * x for c, x in zip(rec.coefficients, reversed(out[-rec.order:]))))
    return out


def digit_count(N: int) -> int:
    return len(str(abs(N)))


@lru_cache(maxsize=None)
def _roots(bits: int) -> tuple[RealInterval, ComplexPairEnclosure]:
    return isolate_cubic_roots(*CHAR_POLY, PrecisionBudget(bits, max(bits, DEFAULT_BUDGET.max_bits)))


def alpha(bits: int = DEFAULT_BUDGET.working_bits) -> RealInterval:
    return _roots(bits)[0]


def log_alpha(bits: int = DEFAULT_BUDGET.working_bits) -> RealInterval:
    return ln_interval(alpha(bits))


def log10(bits: int = DEFAULT_BUDGET.working_bits) -> RealInterval:
    return ln_interval(RealInterval.exact(10, bits))


def tau(bits: int = DEFAULT_BUDGET.working_bits) -> RealInterval:
    """log 10 / log alpha."""
    return log10(bits) / log_alpha(bits)


def binet_a(bits: int = DEFAULT_BUDGET.working_bits) -> RealInterval:
    al = alpha(bits)
    return al ** 2 / (al ** 3 + 2)


@dataclass(frozen=True)
class BinetParams:
    alpha: RealInterval
    beta_gamma: ComplexPairEnclosure
    a: RealInterval
    bc_modulus: RealInterval

    def __post_init__(self):
        if not self.bc_modulus.lies_below(1):
            raise ValueError("modulus of the complex roots is not certified below 1")


def binet_params(bits: int = DEFAULT_BUDGET.working_bits) -> BinetParams:
    al, pair = _roots(bits)
    return BinetParams(alpha=al, beta_gamma=pair, a=binet_a(bits), bc_modulus=pair.modulus())


def residual_bound_check(n: int, budget: PrecisionBudget = DEFAULT_BUDGET) -> bool:
    """Certify |N_n - a alpha^n| < alpha^(-n/2).

    The residual is about alpha^(-n/2) while a alpha^n is about alpha^n, so
    the working precision has to cover roughly 0.83 n bits of cancellation.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    N = term(n)
    start = max(budget.working_bits, int(0.83 * n) + 96)
    for bits in budget.schedule(start):
        al = alpha(bits)
        resid = abs(N - binet_a(bits) * al ** n)
        bound = (al ** -n).sqrt()
        if resid.lies_below(bound):
            return True
        if resid.lies_above(bound):
            return False
    raise EscalationError(f"residual comparison at n={n} undecided at {budget.max_bits} bits")


def dominant_bounds_check(n: int, budget: PrecisionBudget = DEFAULT_BUDGET, lower_shift: int = 2) -> bool:
    """Certify alpha^(n - lower_shift) <= N_n <= alpha^(n-1)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    N = term(n)
    for bits in budget.schedule():
        al = alpha(bits)
        low, high = al ** (n - lower_shift), al ** (n - 1)
        if low.lies_above(N) or high.lies_below(N):
            return False
        if low.hi <= N and N <= high.lo:
            return True
    raise EscalationError(f"growth bounds at n={n} undecided at {budget.max_bits} bits")


def index_window(total_digits: int, budget: PrecisionBudget = DEFAULT_BUDGET) -> tuple[int, int]:
    """Integers n with s log 10 - 2 < n log alpha < s log 10 + 1, s = total_digits.

    Under interval ambiguity the window is widened, never narrowed.
    """
    if total_digits < 1:
        raise ValueError("total_digits must be >= 1")
    bits = budget.working_bits
    la = log_alpha(bits)
    s10 = total_digits * log10(bits)
    lower = (s10 - 2) / la
    upper = (s10 + 1) / la
    n_min = math.floor(lower.lo_q) + 1
    n_max = math.ceil(upper.hi_q) - 1
    return n_min, n_max
