"""Logarithmic heights and the initial bounds from linear forms in logarithms.

All logarithms are natural.  Every bound of the shape c * (1 + log n)^k is
carried as its coefficient c, and the power k is tracked next to it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from gmpy2 import mpfr

from .numeric import (
    DEFAULT_BUDGET,
    DomainError,
    PrecisionBudget,
    RealInterval,
    isolate_cubic_roots,
    ln_interval,
)
from .sequence import A_MIN_POLY, CHAR_POLY, binet_a, log10, log_alpha

# Values printed in the source derivation, kept for comparison only.
PAPER_VALUES = {
    "h_eta1_step1": "2.41",
    "A1_step1": "7.23",
    "matveev_step1": "6.9e12",
    "m1_coeff": "7.0e12",
    "h_eta1_step2": "7.1e12",
    "A1_step2": "2.13e13",
    "matveev_step2": "2.0e25",
    "H": "8.0e25",
    "n_bound": "2.15e29",
    "m_sum_bound": "3.56e28",
}

MATVEEV_FLOOR = Fraction(16, 100)


@dataclass(frozen=True)
class HeightBound:
    """Upper bound on a logarithmic height, possibly as a coefficient of (1 + log n)^log_power."""

    value: RealInterval
    derivation: str
    name: str = ""
    log_power: int = 0
    paper_value: Optional[str] = None

    def __post_init__(self):
        if self.value.lo < 0:
            raise ValueError("heights are non-negative")


@dataclass(frozen=True)
class LinearFormSpec:
    t: int
    D: int
    A: tuple[RealInterval, ...]
    b: tuple[str, ...]
    B: str = "n"
    extra_log_power: int = 0  # A_1 itself carries (1 + log B)^extra_log_power

    def __post_init__(self):
        if self.t < 2 or self.D < 1:
            raise ValueError("need t >= 2 and D >= 1")
        if len(self.A) != self.t or len(self.b) != self.t:
            raise ValueError("A and b must have t entries")
        if any(a.lo < MATVEEV_FLOOR for a in self.A):
            raise ValueError("every A_j must be at least 0.16")


@dataclass(frozen=True)
class InitialBounds:
    m1_bound_coeff: RealInterval  # m1 log 10 < c1 (1 + log n)
    n_bound: int  # n < n_bound
    m_sum_bound: int  # m1 + m2 < m_sum_bound
    heights: tuple[HeightBound, ...] = ()
    matveev_step1: Optional[RealInterval] = None
    matveev_step2: Optional[RealInterval] = None
    H: Optional[RealInterval] = None
    r: int = 2
    n_min: int = 250
    paper: dict = field(default_factory=lambda: dict(PAPER_VALUES))

    def __post_init__(self):
        if self.n_bound < 250:
            raise ValueError("n bound below 250 leaves the case split vacuous")


def _max(*xs: RealInterval) -> RealInterval:
    return RealInterval(max(x.lo for x in xs), max(x.hi for x in xs), max(x.bits for x in xs))


def height_rational(p: int, q: int, budget: PrecisionBudget = DEFAULT_BUDGET) -> HeightBound:
    if q <= 0:
        raise DomainError("denominator must be positive")
    if math.gcd(p, q) != 1:
        raise DomainError("p/q must be in lowest terms")
    value = ln_interval(RealInterval.exact(max(abs(p), q), budget.working_bits))
    return HeightBound(value, f"h({p}/{q}) = log max(|p|, q)", name=f"h({p}/{q})" if q != 1 else f"h({p})")


def cubic_height(c3: int, c2: int, c1: int, c0: int, budget: PrecisionBudget = DEFAULT_BUDGET) -> RealInterval:
    """Height of a root of an irreducible primitive cubic with one real root."""
    root, pair = isolate_cubic_roots(c3, c2, c1, c0, budget)
    bits = budget.working_bits
    total = ln_interval(RealInterval.exact(abs(c3), bits))
    for modulus, count in ((abs(root), 1), (pair.modulus(), 2)):
        if modulus.lies_below(1):
            continue
        if modulus.lo < 1:
            modulus = RealInterval(mpfr(1), modulus.hi, bits)
        total = total + count * ln_interval(modulus)
    return total / 3


def height_a(budget: PrecisionBudget = DEFAULT_BUDGET) -> HeightBound:
    return HeightBound(cubic_height(*A_MIN_POLY, budget), "h(a) = (1/3) log 31, conjugates of a inside the unit disc", name="h(a)")


def height_alpha(budget: PrecisionBudget = DEFAULT_BUDGET) -> HeightBound:
    return HeightBound(cubic_height(*CHAR_POLY, budget), "h(alpha) = (1/3) log alpha", name="h(alpha)")


def height_eta1_step1(budget: PrecisionBudget = DEFAULT_BUDGET) -> HeightBound:
    """h(9a/d1) <= h(9) + h(a) + h(d1) <= 2 log 9 + (1/3) log 31."""
    h9 = height_rational(9, 1, budget).value
    value = h9 + height_a(budget).value + h9
    return HeightBound(
        value,
        "h(9a/d1) <= h(9) + h(a) + h(d1) <= 2 log 9 + (1/3) log 31",
        name="h(eta1) step 1",
        paper_value=PAPER_VALUES["h_eta1_step1"],
    )


def step2_height_constant(budget: PrecisionBudget = DEFAULT_BUDGET) -> RealInterval:
    """4 log 9 + (1/3) log 31 + 2 log 2."""
    h9 = height_rational(9, 1, budget).value
    h2 = height_rational(2, 1, budget).value
    return 4 * h9 + height_a(budget).value + 2 * h2


def height_eta1_step2(m1_log10_bound: RealInterval, budget: PrecisionBudget = DEFAULT_BUDGET) -> HeightBound:
    """h((d1 10^m1 - (d1 - d2)) / 9a) <= c2 (1 + log n), given m1 log 10 < c1 (1 + log n).

    Follows h <= m1 log 10 + 4 log 9 + (1/3) log 31 + 2 log 2, then absorbs the
    constant into the coefficient using 1 + log n >= 1.
    """
    value = m1_log10_bound + step2_height_constant(budget)
    return HeightBound(
        value,
        "h(eta1) <= m1 log 10 + 4 log 9 + (1/3) log 31 + 2 log 2 <= c2 (1 + log n)",
        name="h(eta1) step 2",
        log_power=1,
        paper_value=PAPER_VALUES["h_eta1_step2"],
    )


def matveev_coefficient(spec: LinearFormSpec, budget: PrecisionBudget = DEFAULT_BUDGET) -> RealInterval:
    """C with log|Gamma| > -C (1 + log B) (1 + log B)^extra_log_power.

    C = 1.4 * 30^(t+3) * t^4.5 * D^2 * (1 + log D) * A_1 ... A_t.
    """
    bits = budget.working_bits
    t, D = spec.t, spec.D
    exact_part = Fraction(14, 10) * 30 ** (t + 3) * t ** 4 * D ** 2
    c = RealInterval.exact(t, bits).sqrt() * exact_part
    c = c * (1 + ln_interval(RealInterval.exact(D, bits)))
    for a in spec.A:
        c = c * a
    return c


def step1_linear_form(budget: PrecisionBudget = DEFAULT_BUDGET) -> LinearFormSpec:
    """Lambda_1 = (9a/d1) alpha^n 10^-(m1+m2) - 1."""
    bits = budget.working_bits
    a = binet_a(bits)
    la, l10 = log_alpha(bits), log10(bits)
    h1 = height_eta1_step1(budget).value
    # |log(9a/d1)| over d1 in 1..9 is at most max(log 9a, -log a)
    log_eta1 = _max(ln_interval(9 * a), -ln_interval(a))
    floor = RealInterval.exact(MATVEEV_FLOOR, bits)
    A = (_max(3 * h1, log_eta1, floor), _max(3 * height_alpha(budget).value, la, floor), _max(3 * l10, l10, floor))
    return LinearFormSpec(t=3, D=3, A=A, b=("1", "n", "-(m1+m2)"))


def step2_linear_form(c2: RealInterval, budget: PrecisionBudget = DEFAULT_BUDGET) -> LinearFormSpec:
    """Lambda_2 = ((d1 10^m1 - (d1-d2)) / 9a) alpha^-n 10^m2 - 1; A_1 = 3 c2 (1 + log n).

    3 c2 (1 + log n) dominates |log eta1| <= m1 log 10 - log a because
    c2 exceeds c1 by more than -log a.
    """
    bits = budget.working_bits
    la, l10 = log_alpha(bits), log10(bits)
    floor = RealInterval.exact(MATVEEV_FLOOR, bits)
    A = (_max(3 * c2, floor), _max(3 * height_alpha(budget).value, la, floor), _max(3 * l10, l10, floor))
    return LinearFormSpec(t=3, D=3, A=A, b=("1", "-n", "m2"), extra_log_power=1)


def resolve_n_bound(r: int, H: RealInterval) -> int:
    """Integer bound from L/(log L)^r < H: L < 2^r H (log H)^r."""
    if r < 1:
        raise DomainError("r must be >= 1")
    if not H.lies_above((4 * r * r) ** r):
        raise DomainError(f"hypothesis H > (4r^2)^r = {(4 * r * r) ** r} fails")
    bound = 2 ** r * H * ln_interval(H) ** r
    return math.ceil(bound.hi_q)


def lambda2_constant(budget: PrecisionBudget = DEFAULT_BUDGET) -> RealInterval:
    """K with |Lambda_2| < K alpha^-n; 18 / (9a alpha^n) gives K = 2/a."""
    return 2 / binet_a(budget.working_bits)


def initial_bounds(budget: PrecisionBudget = DEFAULT_BUDGET, n_min: int = 250) -> InitialBounds:
    """Absolute bounds for solutions with n > n_min.

    Step 1: m1 log 10 < c1 (1 + log n), c1 = C1 + log 28.
    Step 2: n log alpha - log K < c3 (1 + log n)^2, turned into n < H (log n)^2
    for n > n_min, then n < 4 H (log H)^2.
    """
    bits = budget.working_bits
    la, l10 = log_alpha(bits), log10(bits)

    h_step1 = height_eta1_step1(budget)
    C1 = matveev_coefficient(step1_linear_form(budget), budget)
    c1 = C1 + ln_interval(RealInterval.exact(28, bits))

    h_step2 = height_eta1_step2(c1, budget)
    c3 = matveev_coefficient(step2_linear_form(h_step2.value, budget), budget)

    log_nmin = ln_interval(RealInterval.exact(n_min, bits))
    K = lambda2_constant(budget)
    H = (c3 * (1 + 1 / log_nmin) ** 2 + ln_interval(K) / log_nmin ** 2) / la
    r = 2
    n_bound = resolve_n_bound(r, H)
    m_sum = (n_bound * la + 2) / l10
    m_sum_bound = math.ceil(m_sum.hi_q)

    heights = (
        height_rational(9, 1, budget),
        height_rational(10, 1, budget),
        height_a(budget),
        height_alpha(budget),
        h_step1,
        h_step2,
    )
    return InitialBounds(
        m1_bound_coeff=c1,
        n_bound=n_bound,
        m_sum_bound=m_sum_bound,
        heights=heights,
        matveev_step1=C1,
        matveev_step2=c3,
        H=H,
        r=r,
        n_min=n_min,
    )


def base10_reading(budget: PrecisionBudget = DEFAULT_BUDGET) -> dict[str, RealInterval]:
    """The height and resolver values re-evaluated with base-10 logarithms.

    These reproduce the printed 2.41 and 2.15e29, which is how the discrepancy
    with the natural-log values is explained in the certificate.
    """
    bits = budget.working_bits
    l10 = log10(bits)

    def lg(x) -> RealInterval:
        return ln_interval(RealInterval.exact(x, bits)) / l10

    h = 2 * lg(9) + lg(31) / 3
    H = RealInterval.exact(Fraction(8) * 10 ** 25, bits)
    gsl = 4 * H * (ln_interval(H) / l10) ** 2
    return {"h_eta1_step1": h, "n_bound": gsl}
