import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from narayana_repdigits.numeric import DomainError, EscalationError, PrecisionBudget, RealInterval
from narayana_repdigits.pipeline import PAPER_M, _stage1_inst, mu_stage1
from narayana_repdigits.reduction import (
    ReductionInstance,
    certified_quotients,
    convergents,
    epsilon,
    expand_cf,
    exclusion_check,
    reduce,
    reduced_bound,
    small_linear_form_bound,
)
from narayana_repdigits.sequence import tau


def _mpmath_cf(x, count):
    out = []
    for _ in range(count):
        a = int(mpmath.floor(x))
        out.append(a)
        x = 1 / (x - a)
    return out


@pytest.fixture(scope="module")
def tau_cf():
    return expand_cf(tau, 6 * PAPER_M, extra=10)


def test_rational_expansion():
    cf = expand_cf(Fraction(10, 7), 0)
    assert cf.partial_quotients == (1, 2, 3)
    assert cf.convergents[-1] == (10, 7)


@given(st.fractions(min_value=Fraction(1, 100), max_value=1000, max_denominator=10 ** 9))
def test_rational_expansion_terminates_exactly(x):
    q = certified_quotients(x, x)
    p, d = convergents(q)[-1]
    assert Fraction(p, d) == x


def test_tau_quotients_match_mpmath(tau_cf):
    mpmath.mp.dps = 400
    al = mpmath.findroot(lambda x: x ** 3 - x ** 2 - 1, mpmath.mpf("1.5"))
    ref = _mpmath_cf(mpmath.log(10) / mpmath.log(al), len(tau_cf.partial_quotients))
    assert tau_cf.partial_quotients[0] == 6
    assert list(tau_cf.partial_quotients) == ref


def test_convergent_identity_and_threshold(tau_cf):
    conv = tau_cf.convergents
    for k in range(1, len(conv)):
        (p, q), (pp, qq) = conv[k], conv[k - 1]
        assert p * qq - pp * q == (-1) ** (k - 1)
    k = tau_cf.first_index_beyond(6 * PAPER_M)
    assert k is not None and k < 80
    assert conv[k][1] == 2313941725927419874526777293873
    assert len(conv) == k + 11


def test_expansion_is_deterministic(tau_cf):
    again = expand_cf(tau, 6 * PAPER_M, PrecisionBudget(2048), extra=10)
    assert again.partial_quotients == tau_cf.partial_quotients


def test_expansion_fails_under_tiny_budget():
    with pytest.raises(EscalationError, match="not certified"):
        expand_cf(tau, 6 * PAPER_M, PrecisionBudget(64, 64))


def test_stage1_epsilon_example(tau_cf):
    # d1 = 1 is one of the nine members; the family minimum is ~0.01686
    q = tau_cf.convergents[tau_cf.first_index_beyond(6 * PAPER_M)][1]
    eps = [epsilon(_stage1_inst(d1, PAPER_M), q) for d1 in range(1, 10)]
    positive = [e for e in eps if e is not None]
    assert len(positive) == 9
    m = min(positive, key=lambda e: e.lo)
    assert math.isclose(float(m.mid), 0.0168611519871, rel_tol=1e-9)


def test_epsilon_against_mpmath(tau_cf):
    mpmath.mp.dps = 120
    al = mpmath.findroot(lambda x: x ** 3 - x ** 2 - 1, mpmath.mpf("1.5"))
    a = al ** 2 / (al ** 3 + 2)
    t = mpmath.log(10) / mpmath.log(al)
    q = tau_cf.convergents[tau_cf.first_index_beyond(6 * PAPER_M)][1]
    dist = lambda x: abs(x - mpmath.nint(x))
    for d1 in (1, 5, 9):
        mu = mpmath.log(d1 / (9 * a)) / mpmath.log(al)
        ref = dist(mu * q) - PAPER_M * dist(t * q)
        got = epsilon(_stage1_inst(d1, PAPER_M), q)
        if ref > 0:
            assert got is not None and abs(float(got.mid) - float(ref)) < 1e-20
        else:
            assert got is None


def test_reduce_gives_paper_stage1_bound(tau_cf):
    ks = [reduce(_stage1_inst(d1, PAPER_M), tau_cf).k_bound for d1 in range(1, 10)]
    assert max(ks) - 1 == 34


def test_reduced_bound_rejects_nonpositive():
    inst = ReductionInstance(tau, RealInterval.exact(Fraction(1, 3)), RealInterval.exact(1), RealInterval.exact(10), 10)
    with pytest.raises(DomainError):
        reduced_bound(inst, 7, RealInterval.exact(0))


def test_small_linear_form_bound():
    assert small_linear_form_bound(RealInterval.exact(Fraction(1, 4))).contains(Fraction(1, 2))
    with pytest.raises(DomainError):
        small_linear_form_bound(RealInterval.exact(Fraction(3, 5)))


@settings(max_examples=40)
@given(st.integers(1, 9), st.integers(1, 10 ** 29), st.integers(35, 200))
def test_no_small_form_beyond_reduced_bound(d1, m, k):
    # no m <= M can make the form smaller than A B^-k once k exceeds the reduced bound
    inst = _stage1_inst(d1, PAPER_M)
    assert exclusion_check(inst, m, k, bits=512)


def test_instance_validation():
    with pytest.raises(ValueError):
        ReductionInstance(tau, mu_stage1(1, 128), RealInterval.exact(1), RealInterval.exact(1), 10)
    with pytest.raises(ValueError):
        ReductionInstance(tau, mu_stage1(1, 128), RealInterval.exact(1), RealInterval.exact(10), 0)
