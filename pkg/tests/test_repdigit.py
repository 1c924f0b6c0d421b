from itertools import groupby

import pytest
from hypothesis import given, strategies as st

from narayana_repdigits.repdigit import ConcatPattern, decompose, enumerate_values, value

patterns = st.builds(
    ConcatPattern,
    d1=st.integers(1, 9),
    m1=st.integers(1, 30),
    d2=st.integers(0, 9),
    m2=st.integers(1, 30),
)


def _by_string(p):
    return int(str(p.d1) * p.m1 + str(p.d2) * p.m2)


@given(patterns)
def test_value_matches_string_construction(p):
    assert value(p) == _by_string(p)


@given(patterns)
def test_decompose_round_trip(p):
    q = decompose(value(p))
    assert q is not None and value(q) == value(p)
    if p.d1 != p.d2:
        assert q == p


def test_concatenation_identity_exhaustive():
    for p, v in enumerate_values(8):
        assert v == _by_string(p)
        assert 9 * v == p.d1 * 10 ** (p.m1 + p.m2) - (p.d1 - p.d2) * 10 ** p.m2 - p.d2


def test_decompose_against_run_lengths():
    for N in range(1_000_000):
        runs = len([k for k, _ in groupby(str(N))])
        assert (decompose(N) is not None) == (N >= 10 and runs <= 2)


@pytest.mark.parametrize(
    "N, expected",
    [(88, (8, 1, 8, 1)), (277, (2, 1, 7, 2)), (13, (1, 1, 3, 1)), (60, (6, 1, 0, 1)), (1000, (1, 1, 0, 3))],
)
def test_decompose_examples(N, expected):
    assert decompose(N).as_tuple() == expected


@pytest.mark.parametrize("N", [0, 7, 121, 1012])
def test_decompose_rejects(N):
    assert decompose(N) is None


@pytest.mark.parametrize("args", [(0, 1, 1, 1), (10, 1, 1, 1), (1, 0, 1, 1), (1, 1, 10, 1), (1, 1, 1, 0)])
def test_pattern_validation(args):
    with pytest.raises(ValueError):
        ConcatPattern(*args)


def test_enumeration_count_and_uniqueness():
    # 90 digit pairs per split, total - 1 splits per length
    vals = list(enumerate_values(6))
    assert len(vals) == sum(90 * (t - 1) for t in range(2, 7))
    assert ConcatPattern(8, 1, 8, 1).is_pure_repdigit
    with pytest.raises(ValueError):
        list(enumerate_values(1))
