from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from spinnet.quadnum import QuadNum, rational_sqrt, squarefree_split

rats = st.fractions(min_value=-50, max_value=50, max_denominator=30)
fields = st.sampled_from([-2, -1, 2, 3, 5, -7])


def qn(m):
    return st.builds(lambda p, q: QuadNum(p, q, m), rats, rats)


@given(st.fractions(min_value=-10 ** 6, max_value=10 ** 6, max_denominator=1000))
def test_squarefree_split_reconstructs(x):
    s, m = squarefree_split(x)
    assert s * s * m == x
    if x:
        assert all(m % (p * p) for p in range(2, 100))


@given(fields.flatmap(lambda m: st.tuples(qn(m), qn(m), qn(m))))
def test_field_axioms(t):
    a, b, c = t
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    assert (a - a) == 0
    if a != 0:
        assert a * a.inverse() == 1
        assert (b / a) * a == b


@given(fields.flatmap(qn))
def test_numeric_value_and_norm(a):
    mpmath.mp.dps = 30
    n = a.norm()
    n_mp = mpmath.mpf(n.numerator) / n.denominator
    assert abs(a.to_mp() * a.conj().to_mp() - n_mp) < mpmath.mpf(10) ** -25 * (1 + abs(n_mp))


@given(fields.flatmap(qn))
def test_json_roundtrip(a):
    assert QuadNum.from_json(a.to_json()) == a


@given(fields.flatmap(qn))
def test_sqrt_exact_of_square(a):
    r = (a * a).sqrt_exact()
    assert r is not None and r * r == a * a


def test_normalization_of_radicand():
    assert QuadNum(1, 2, 8) == QuadNum(1, 4, 2)
    assert QuadNum(3, 5, 1) == 8
    assert QuadNum.sqrt(-8) == QuadNum(0, 2, -2)
    assert str(QuadNum(0, 1, 2)) == "sqrt(2)"
    assert str(QuadNum(Fraction(329, 729), Fraction(-460, 729), -2)) == "329/729 - 460/729*i*sqrt(2)"


def test_mixing_fields_rejected():
    with pytest.raises(ValueError):
        QuadNum(0, 1, 2) + QuadNum(0, 1, 3)


def test_rational_sqrt():
    assert rational_sqrt(Fraction(9, 4)) == Fraction(3, 2)
    assert rational_sqrt(2) is None
    assert rational_sqrt(-4) is None
