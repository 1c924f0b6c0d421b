"""Certified continued fractions and the Baker-Davenport reduction step.

For real tau, mu and a convergent p/q of tau with q > 6M, put
eps = ||mu q|| - M ||tau q||.  When eps > 0 the inequality
0 < |m tau - n + mu| < A B^-k has no solution with m <= M and
k >= log(A q / eps) / log B.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .numeric import (
    DEFAULT_BUDGET,
    AmbiguityError,
    DomainError,
    EscalationError,
    PrecisionBudget,
    RealInterval,
    Recipe,
    dist_to_nearest_int,
    ln_interval,
)

Real = Union[RealInterval, Recipe]


def _at(x: Real, bits: int) -> RealInterval:
    return x if isinstance(x, RealInterval) else x(bits)


@dataclass(frozen=True)
class ContinuedFraction:
    source: RealInterval
    partial_quotients: tuple[int, ...]
    convergents: tuple[tuple[int, int], ...]
    bits: int = 0

    def __post_init__(self):
        for k in range(1, len(self.convergents)):
            (p, q), (pp, qq) = self.convergents[k], self.convergents[k - 1]
            if p * qq - pp * q != (-1) ** (k - 1):
                raise ArithmeticError(f"convergent identity fails at index {k}")
            if k >= 2 and not q > qq:
                raise ArithmeticError(f"denominators not increasing at index {k}")

    def first_index_beyond(self, bound: int) -> Optional[int]:
        for k, (_, q) in enumerate(self.convergents):
            if q > bound:
                return k
        return None


def convergents(quotients) -> list[tuple[int, int]]:
    out = []
    p0, q0, p1, q1 = 1, 0, 0, 1
    for a in quotients:
        p0, p1 = a * p0 + p1, p0
        q0, q1 = a * q0 + q1, q0
        out.append((p0, q0))
    return out


def certified_quotients(lo: Fraction, hi: Fraction, min_q: Optional[int] = None, extra: int = 0) -> list[int]:
    """Partial quotients shared by every real number in [lo, hi].

    Stops at the first undecidable floor, or ``extra`` terms after the first
    convergent denominator exceeding ``min_q``.
    """
    out: list[int] = []
    q0, q1 = 0, 1  # q_{-1}, q_{-2}
    reached = None
    x, y = lo, hi
    while True:
        a = math.floor(x)
        if math.floor(y) != a:
            return out
        out.append(a)
        q0, q1 = a * q0 + q1, q0
        if min_q is not None and reached is None and q0 > min_q:
            reached = len(out) - 1
        if reached is not None and len(out) - 1 >= reached + extra:
            return out
        if x == y == a:
            return out  # rational source, expansion finished
        if x == a or y == a:
            return out
        # x -> 1/(x - a) is decreasing, so the endpoints swap
        x, y = 1 / (y - a), 1 / (x - a)


def expand_cf(
    source: Union[Recipe, Fraction, int],
    min_q: int,
    budget: PrecisionBudget = DEFAULT_BUDGET,
    extra: int = 0,
) -> ContinuedFraction:
    """Expand until some q_k > min_q (plus ``extra`` further terms).

    ``source`` is either an exact rational, which is expanded completely, or
    a recipe returning an enclosure at a requested precision.
    """
    if isinstance(source, (int, Fraction)):
        q = Fraction(source)
        quotients = certified_quotients(q, q)
        return ContinuedFraction(RealInterval.exact(q), tuple(quotients), tuple(convergents(quotients)))

    quotients: list[int] = []
    enclosure = None
    for bits in budget.schedule():
        enclosure = source(bits)
        quotients = certified_quotients(enclosure.lo_q, enclosure.hi_q, min_q, extra)
        conv = convergents(quotients)
        k = next((i for i, (_, q) in enumerate(conv) if q > min_q), None)
        if k is not None and len(conv) - 1 >= k + extra:
            return ContinuedFraction(enclosure, tuple(quotients), tuple(conv), bits)
    raise EscalationError(
        f"partial quotient a_{len(quotients)} not certified at {budget.max_bits} bits", enclosure
    )


@dataclass(frozen=True)
class ReductionInstance:
    tau: Real
    mu: Real
    A: Real
    B: Real
    M: int

    def __post_init__(self):
        if self.M < 1:
            raise ValueError("M must be >= 1")
        for name in ("A", "B"):
            x = getattr(self, name)
            if isinstance(x, RealInterval):
                if name == "A" and not x.lo > 0:
                    raise ValueError("A must be positive")
                if name == "B" and not x.lo > 1:
                    raise ValueError("B must exceed 1")


@dataclass(frozen=True)
class ReductionOutcome:
    q_used: int
    epsilon: RealInterval
    k_bound: int  # every solution has k < k_bound

    def __post_init__(self):
        if not self.epsilon.lo > 0:
            raise ValueError("outcome requires a certified positive epsilon")


def epsilon(inst: ReductionInstance, q: int, budget: PrecisionBudget = DEFAULT_BUDGET) -> Optional[RealInterval]:
    """Certified ||mu q|| - M ||tau q||, or None when it is certified non-positive."""
    start = q.bit_length() + inst.M.bit_length() + 96
    for bits in budget.schedule(start):
        try:
            d_mu = dist_to_nearest_int(_at(inst.mu, bits) * q)
            d_tau = dist_to_nearest_int(_at(inst.tau, bits) * q)
        except AmbiguityError:
            continue
        eps = d_mu - inst.M * d_tau
        if eps.lo > 0:
            return eps
        if eps.hi <= 0:
            return None
    raise EscalationError(f"sign of epsilon for q={q} undecided at {budget.max_bits} bits")


def reduced_bound(inst: ReductionInstance, q: int, eps: RealInterval, budget: PrecisionBudget = DEFAULT_BUDGET) -> int:
    """K with no solution at k >= K: floor of the upper bound of log(Aq/eps)/log B, plus one."""
    if not eps.lo > 0:
        raise DomainError("epsilon must be certified positive")
    bits = max(budget.working_bits, eps.bits)
    x = ln_interval(_at(inst.A, bits) * q / eps) / ln_interval(_at(inst.B, bits))
    return math.floor(x.hi_q) + 1


def reduce(
    inst: ReductionInstance,
    cf: ContinuedFraction,
    budget: PrecisionBudget = DEFAULT_BUDGET,
    start_q: Optional[int] = None,
) -> Optional[ReductionOutcome]:
    """Try convergents past 6M in order until epsilon is certified positive."""
    threshold = 6 * inst.M
    for _, q in cf.convergents:
        if q <= threshold or (start_q is not None and q < start_q):
            continue
        eps = epsilon(inst, q, budget)
        if eps is not None:
            return ReductionOutcome(q, eps, reduced_bound(inst, q, eps, budget))
    return None


def small_linear_form_bound(gamma_abs: RealInterval) -> RealInterval:
    """If |e^x - 1| < 1/2 then |x| < 2 |e^x - 1|."""
    if not gamma_abs.lies_below(Fraction(1, 2)):
        raise DomainError("need |e^x - 1| < 1/2 before bounding |x|")
    return 2 * gamma_abs


def exclusion_check(
    inst: ReductionInstance, m: int, k: int, bits: int = DEFAULT_BUDGET.working_bits
) -> bool:
    """Direct check that |m tau - n + mu| >= A B^-k at the nearest integer n."""
    t = _at(inst.tau, bits) * m + _at(inst.mu, bits)
    d = dist_to_nearest_int(t)
    return not d.lies_below(_at(inst.A, bits) * _at(inst.B, bits) ** -k)
