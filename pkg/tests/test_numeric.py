from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from narayana_repdigits.numeric import (
    AmbiguityError,
    DomainError,
    EscalationError,
    PrecisionBudget,
    RealInterval,
    ThreeRealRootsError,
    cubic_discriminant,
    dist_to_nearest_int,
    isolate_cubic_roots,
    ln_interval,
    refine,
)

fracs = st.fractions(min_value=-1000, max_value=1000, max_denominator=10 ** 6)
pos = st.fractions(min_value=Fraction(1, 1000), max_value=1000, max_denominator=10 ** 6)
bits = st.sampled_from([53, 64, 128, 256])


@given(fracs, fracs, bits)
def test_sum_and_product_contain_exact(x, y, b):
    X, Y = RealInterval.exact(x, b), RealInterval.exact(y, b)
    assert (X + Y).contains(x + y)
    assert (X - Y).contains(x - y)
    assert (X * Y).contains(x * y)
    assert (-X).contains(-x)
    assert abs(X).contains(abs(x))


@given(fracs, pos, bits)
def test_division_contains_exact(x, y, b):
    assert (RealInterval.exact(x, b) / RealInterval.exact(y, b)).contains(x / y)


@given(pos, st.integers(-6, 6))
def test_power_contains_exact(x, k):
    assert (RealInterval.exact(x, 128) ** k).contains(x ** k)


@given(pos)
def test_log_and_sqrt_bracket_mpmath(x):
    mpmath.mp.prec = 400
    L = ln_interval(RealInterval.exact(x, 200))
    S = RealInterval.exact(x, 200).sqrt()
    ref_l = mpmath.log(mpmath.mpf(x.numerator) / x.denominator)
    ref_s = mpmath.sqrt(mpmath.mpf(x.numerator) / x.denominator)
    assert L.lo_q <= Fraction(str(ref_l)) + Fraction(1, 10 ** 100) and Fraction(str(ref_l)) - Fraction(1, 10 ** 100) <= L.hi_q
    assert S.lo_q <= Fraction(str(ref_s)) + Fraction(1, 10 ** 100) and Fraction(str(ref_s)) - Fraction(1, 10 ** 100) <= S.hi_q


def test_division_by_interval_containing_zero():
    with pytest.raises(DomainError):
        RealInterval.exact(1) / RealInterval.hull(Fraction(-1), Fraction(1))


def test_log_of_nonpositive():
    with pytest.raises(DomainError):
        ln_interval(RealInterval.exact(0))


def test_floor_ambiguity():
    assert RealInterval.hull(Fraction(5, 2), Fraction(11, 4)).floor() == 2
    with pytest.raises(AmbiguityError):
        RealInterval.hull(Fraction(19, 10), Fraction(21, 10)).floor()


@pytest.mark.parametrize(
    "lo, hi, expected",
    [
        (Fraction(3, 10), Fraction(3, 10), Fraction(3, 10)),
        (Fraction(7, 10), Fraction(7, 10), Fraction(3, 10)),
        (Fraction(-1, 10), Fraction(1, 10), Fraction(0)),
        (Fraction(2, 5), Fraction(3, 5), Fraction(1, 2)),
    ],
)
def test_dist_to_nearest_int(lo, hi, expected):
    d = dist_to_nearest_int(RealInterval.hull(lo, hi))
    assert d.contains(expected) and d.lo_q <= expected


@given(fracs)
def test_dist_contains_exact(x):
    d = dist_to_nearest_int(RealInterval.exact(x, 128))
    assert d.contains(min(x - (x // 1), (x // 1) + 1 - x))


def test_refine_narrows_and_escalates():
    def third(b):
        return RealInterval.exact(1, b) / 3

    r = refine(third, Fraction(1, 2 ** 300), PrecisionBudget(64, 1024))
    assert r.contains(Fraction(1, 3)) and r.width <= Fraction(1, 2 ** 300)
    with pytest.raises(EscalationError) as info:
        refine(third, Fraction(1, 2 ** 300), PrecisionBudget(64, 128))
    assert info.value.best is not None and info.value.best.contains(Fraction(1, 3))


def test_narayana_root_certificate():
    root, pair = isolate_cubic_roots(1, -1, 0, -1, PrecisionBudget(256))
    assert root.width <= Fraction(1, 2 ** 200)
    # exact sign change across the enclosure
    f = lambda x: x ** 3 - x ** 2 - 1
    assert f(root.lo_q) < 0 < f(root.hi_q)
    mpmath.mp.dps = 60
    ref = mpmath.findroot(lambda x: x ** 3 - x ** 2 - 1, 1.5)
    assert abs(float(root.mid) - float(ref)) < 1e-15
    assert str(root.decimal(20)[0]).startswith("1.4655712318767680266")
    # |beta|^2 = 1/alpha
    mod2 = pair.modulus() ** 2 * root
    assert mod2.contains(1)


def test_three_real_roots_rejected():
    assert cubic_discriminant(1, 0, -3, 1) > 0
    with pytest.raises(ThreeRealRootsError):
        isolate_cubic_roots(1, 0, -3, 1)


@given(st.integers(1, 50), st.integers(-50, 50), st.integers(-50, 50), st.integers(-50, 50))
def test_isolated_root_brackets_sign_change(c3, c2, c1, c0):
    if c0 == 0 or cubic_discriminant(c3, c2, c1, c0) >= 0:
        return
    root, _ = isolate_cubic_roots(c3, c2, c1, c0, PrecisionBudget(128))
    f = lambda x: ((c3 * x + c2) * x + c1) * x + c0
    lo, hi = root.lo_q, root.hi_q
    assert f(lo) == 0 or f(hi) == 0 or (f(lo) < 0) != (f(hi) < 0)
