import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from narayana_repdigits.baker import (
    LinearFormSpec,
    base10_reading,
    height_a,
    height_alpha,
    height_eta1_step1,
    height_rational,
    initial_bounds,
    lambda2_constant,
    matveev_coefficient,
    resolve_n_bound,
)
from narayana_repdigits.numeric import DomainError, RealInterval
from narayana_repdigits.sequence import log_alpha

ONE = RealInterval.exact(1)


def _close(x: RealInterval, ref: float, rel=1e-9):
    return math.isclose(float(x.mid), ref, rel_tol=rel)


def test_rational_heights():
    assert _close(height_rational(9, 1).value, math.log(9))
    assert _close(height_rational(-3, 7).value, math.log(7))
    with pytest.raises(DomainError):
        height_rational(2, 4)


def test_algebraic_heights():
    assert _close(height_a().value, math.log(31) / 3)
    assert height_alpha().value.intersect(log_alpha() / 3)


def test_step1_height_natural_log():
    h = height_eta1_step1()
    assert _close(h.value, 2 * math.log(9) + math.log(31) / 3)
    assert 5.539 < float(h.value.mid) < 5.5392


def test_printed_height_is_a_base10_reading():
    b = base10_reading()
    assert f"{float(b['h_eta1_step1'].mid):.2f}" == "2.41"
    assert f"{float(b['n_bound'].mid):.3g}" == "2.15e+29"


def test_matveev_coefficient_reference():
    # 1.4 * 30^6 * 3^4.5 * 9 * (1 + ln 3)
    spec = LinearFormSpec(t=3, D=3, A=(ONE, ONE, ONE), b=("1", "1", "1"))
    ref = 1.4 * 30 ** 6 * 3 ** 4.5 * 9 * (1 + math.log(3))
    assert _close(matveev_coefficient(spec), ref)


@given(st.lists(st.fractions(min_value=Fraction(1, 5), max_value=100), min_size=3, max_size=3), st.integers(0, 99))
def test_matveev_monotone_in_A(As, bump):
    A = tuple(RealInterval.exact(a, 128) for a in As)
    A2 = (RealInterval.exact(As[0] + bump, 128),) + A[1:]
    c = matveev_coefficient(LinearFormSpec(3, 3, A, ("1", "1", "1")))
    c2 = matveev_coefficient(LinearFormSpec(3, 3, A2, ("1", "1", "1")))
    assert c.lo <= c2.hi and c.hi <= c2.hi


def test_linear_form_spec_rejects_small_A():
    with pytest.raises(ValueError):
        LinearFormSpec(3, 3, (ONE, ONE, RealInterval.exact(Fraction(1, 10))), ("1", "1", "1"))


@pytest.mark.parametrize("r, H, expected", [(1, 20, 120), (2, 8 * 10 ** 25, 1.1384e30)])
def test_resolver_examples(r, H, expected):
    got = resolve_n_bound(r, RealInterval.exact(H))
    assert math.isclose(got, expected, rel_tol=1e-4)


@given(st.integers(1, 3), st.integers(0, 10 ** 6))
def test_resolver_bound_satisfies_inequality(r, extra):
    H = (4 * r * r) ** r + 1 + extra
    L = resolve_n_bound(r, RealInterval.exact(H))
    assert L / math.log(L) ** r >= H


def test_resolver_hypothesis_enforced():
    with pytest.raises(DomainError):
        resolve_n_bound(2, RealInterval.exact(256))


def test_lambda2_constant_is_two_over_a():
    assert 4.79 < float(lambda2_constant().mid) < 4.80


def test_initial_bounds_native():
    ib = initial_bounds()
    assert math.isclose(float(ib.m1_bound_coeff.mid), 1.18663e14, rel_tol=1e-4)
    assert math.isclose(float(ib.matveev_step2.mid), 2.542e27, rel_tol=1e-3)
    assert 1.5e32 < ib.n_bound < 1.6e32
    mpmath.mp.dps = 60
    ref = (ib.n_bound * mpmath.log(mpmath.findroot(lambda x: x ** 3 - x ** 2 - 1, 1.5)) + 2) / mpmath.log(10)
    assert ib.m_sum_bound == int(mpmath.ceil(ref))
    assert ib.n_bound > 250
