from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from spinnet import reference as ref
from spinnet.errors import DegenerateError
from spinnet.geometry import (EUCLIDEAN, MINKOWSKIAN, PLANE, cayley_menger, dihedral_angles, faces, is_degenerate,
                              variational_polynomial, variational_solve)
from spinnet.graph import curves, standard_graph
from spinnet.quadnum import QuadNum

TET = standard_graph("tetrahedron")
CYCLES = [c for c in curves(TET) if c]


def _from_cycles(mult):
    """Every nonnegative sum of cycles is an admissible coloring."""
    col = [0] * 6
    for m, c in zip(mult, CYCLES):
        for e in c:
            col[e] += m
    return tuple(col)


admissible6 = st.lists(st.integers(0, 8), min_size=len(CYCLES), max_size=len(CYCLES)).map(_from_cycles)


def test_reference_determinants():
    for labels, det in ref.DETERMINANTS.items():
        assert cayley_menger(labels).det == det
    assert cayley_menger(ref.EUCLIDEAN_LABELS).cls == EUCLIDEAN
    assert cayley_menger(ref.PLANE_LABELS).cls == PLANE
    assert cayley_menger(ref.MINKOWSKIAN_LABELS).cls == MINKOWSKIAN


@given(admissible6)
def test_discriminant_is_minus_quarter_det(L):
    assert all(sum(t) % 2 == 0 and 2 * max(t) <= sum(t) for t in faces(L))
    E = variational_polynomial(L) + [Fraction(0)] * 3
    assert E[1] ** 2 - 4 * E[2] * E[0] == -cayley_menger(L).det / 4


def test_variational_data_all_two():
    vd = variational_solve((2,) * 6)
    assert (vd.A, vd.B, vd.C, vd.D) == (6, -44, 81, -8)
    assert set(vd.roots) == {QuadNum(Fraction(11, 3), Fraction(1, 6), -2), QuadNum(Fraction(11, 3), Fraction(-1, 6), -2)}
    assert vd.field == -2


def test_variational_data_minkowskian():
    vd = variational_solve(ref.MINKOWSKIAN_LABELS)
    assert (vd.A, vd.B, vd.C, vd.D) == (34, -572, 2401, 648)
    assert vd.roots[0] == QuadNum(Fraction(143, 17), Fraction(9, 34), 2)
    assert vd.field == 2


def test_plane_double_root():
    vd = variational_solve(ref.PLANE_LABELS)
    assert vd.D == 0 and vd.roots[0] == vd.roots[1] == QuadNum(Fraction(36, 5))


def test_angles():
    mpmath.mp.dps = 30
    th = dihedral_angles((2,) * 6, 30)
    assert all(abs(t - mpmath.acos(mpmath.mpf(-1) / 3)) < 1e-25 for t in th)
    th = dihedral_angles(ref.MINKOWSKIAN_LABELS, 30)
    assert abs(mpmath.re(th[0]) - mpmath.pi) < 1e-25
    assert abs(mpmath.im(th[0]) - mpmath.mpf("0.7389979438517386")) < 1e-14


def test_degenerate_refused():
    L = (1, 1, 2, 1, 1, 2)
    assert is_degenerate(L)
    with pytest.raises(DegenerateError):
        dihedral_angles(L)
    with pytest.raises(DegenerateError):
        variational_solve(L)


def test_volume():
    v = cayley_menger((2,) * 6).volume
    assert v * v == Fraction(32, 36)


def test_minkowskian_cut_membership_flags():
    vd = variational_solve(ref.MINKOWSKIAN_LABELS)
    assert vd.cut == (7, 8)
    assert all(r.m == 2 for r in vd.roots)  # both real


def test_minkowskian_exactly_one_root_in_cut():
    # both real roots 8.04 and 8.79 exceed min S = 8, so this claimed example does not hold
    vd = variational_solve(ref.MINKOWSKIAN_LABELS)
    assert sum(vd.in_cut) == 1
