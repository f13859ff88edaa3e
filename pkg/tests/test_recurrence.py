from fractions import Fraction
from math import comb

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from spinnet import reference as ref
from spinnet.errors import NotFoundError
from spinnet.quadnum import QuadNum
from spinnet.recurrence import (PolyRecurrence, characteristic_roots, expansion_residual, fit_stokes,
                                formal_solutions, guess_recurrence, required_length)


def test_catalan():
    seq = [comb(2 * n, n) // (n + 1) for n in range(30)]
    rec = guess_recurrence(seq)
    assert (rec.order, rec.degree) == (1, 1)
    assert rec.coeffs == ((-2, -4), (2, 1))
    assert rec.annihilates(seq)


def test_fibonacci():
    seq = [0, 1]
    for _ in range(30):
        seq.append(seq[-1] + seq[-2])
    rec = guess_recurrence(seq)
    assert rec.coeffs == ((-1,), (-1,), (1,))
    roots = {r for r, _ in characteristic_roots(rec)}
    assert roots == {QuadNum(Fraction(1, 2), Fraction(1, 2), 5), QuadNum(Fraction(1, 2), Fraction(-1, 2), 5)}


@settings(max_examples=25)
@given(st.integers(1, 4), st.integers(0, 5), st.integers(1, 4), st.integers(1, 5), st.integers(-3, 3))
def test_hypergeometric_terms_recovered(a, b, c, d, sgn):
    """a_{n+1}/a_n = s (a n + b) / (c n + d)."""
    s = sgn or 1
    seq = [Fraction(1)]
    for n in range(40):
        seq.append(seq[-1] * s * Fraction(a * n + b, c * n + d))
    rec = guess_recurrence(seq)
    assert rec.order == 1 and rec.annihilates(seq)
    assert rec.degree <= 1


def test_not_found_on_noise():
    seq = [Fraction((7 ** n) % 101, 1 + n % 5) for n in range(40)]
    with pytest.raises(NotFoundError):
        guess_recurrence(seq, r_max=2, d_max=5)


def test_too_short():
    assert required_length(2, 7) == 37
    with pytest.raises(NotFoundError):
        guess_recurrence([1, 2, 3], r_max=2)


def test_string_roundtrip():
    rec = PolyRecurrence(((1, -2, 3), (0, 5), (-7,)))
    assert PolyRecurrence.from_strings(rec.to_strings()) == rec


def test_central_binomial_formal_solution():
    seq = [comb(2 * n, n) for n in range(30)]
    (sol,) = formal_solutions(guess_recurrence(seq), 3)
    assert sol.Lambda == 4 and sol.alpha == Fraction(-1, 2)
    assert sol.mu[1] == Fraction(-1, 8) and sol.mu[2] == Fraction(1, 128)


def test_residual_decay_binomial():
    mpmath.mp.dps = 40
    seq = [comb(2 * n, n) for n in range(121)]
    sols = formal_solutions(guess_recurrence(seq), 3)
    (S,) = fit_stokes(seq, sols, range(80, 121), 3)
    assert abs(S - 1 / mpmath.sqrt(mpmath.pi)) < 1e-8
    _, slope = expansion_residual(seq, sols, [1 / mpmath.sqrt(mpmath.pi)], range(20, 121), 3)
    # next term is n^(-1/2-4)
    assert abs(slope - (-4.5)) < 0.3


def test_euclidean_from_forty_terms():
    seq = [ref.closed_sequence(ref.EUCLIDEAN_LABELS, n) for n in range(81)]
    rec = guess_recurrence(seq[:40], r_max=2)
    assert (rec.order, rec.degree) == (2, 7)
    assert rec.annihilates(seq)
    sols = formal_solutions(rec, 6)
    for sign in "+-":
        want = ref.EUCLIDEAN[sign]
        (s,) = [x for x in sols if x.Lambda == want["Lambda"]]
        assert s.mu == want["mu"]


def test_plane_double_root_exponents():
    seq = [ref.closed_sequence(ref.PLANE_LABELS, n) for n in range(100)]
    rec = guess_recurrence(seq, r_max=2)
    assert rec.degree == 24
    [(lam, mult)] = characteristic_roots(rec)
    assert lam == -1 and mult == 2
    sols = formal_solutions(rec, 6)
    assert sorted(s.alpha for s in sols) == [Fraction(-5, 3), Fraction(-4, 3)]
    for sign in "+-":
        (s,) = [x for x in sols if x.alpha == ref.PLANE[sign]["alpha"]]
        assert s.mu == ref.PLANE[sign]["mu"]


def test_json_of_solutions():
    seq = [comb(2 * n, n) for n in range(30)]
    (sol,) = formal_solutions(guess_recurrence(seq), 2)
    d = sol.to_json()
    assert QuadNum.from_json(d["Lambda"]) == 4
    assert [QuadNum.from_json(m) for m in d["mu"]] == sol.mu
