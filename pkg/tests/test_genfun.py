from fractions import Fraction

import pytest

from spinnet.errors import InvalidCurveError
from spinnet.evaluation import chromatic_eval, scaled_sequence
from spinnet.genfun import (curve_polynomial, diagonal_series, fourier_coefficients, fourier_coefficients_direct,
                            spin_series_expand)
from spinnet.graph import admissible, curves, standard_graph


# the defining double sum costs 4^(number of curves): keep to <= 8 curves
@pytest.mark.parametrize("name,flip", [("theta", None), ("theta", 0), ("tetrahedron", None),
                                       ("tetrahedron", 1), ("drum2", 0)])
def test_fast_transform_matches_definition(name, flip):
    g = standard_graph(name)
    if flip is not None:
        g = g.flip_vertex(flip)
    assert fourier_coefficients(g) == fourier_coefficients_direct(g)


def test_flipped_theta_has_nontrivial_weights():
    g = standard_graph("theta").flip_vertex(0)
    assert g.genus() == 1
    fc = fourier_coefficients(g)
    assert fc != {(): Fraction(1)}
    assert sum(fc.values()) == 1


def test_k33_fourier_weights():
    fc = fourier_coefficients(standard_graph("k33"))
    assert len(fc) == 4
    assert sorted(fc.values()) == [Fraction(-1, 2), Fraction(1, 2), Fraction(1, 2), Fraction(1, 2)]
    assert sum(fc.values()) == 1


@pytest.mark.parametrize("name", ["theta", "tetrahedron", "drum3"])
def test_planar_weights_trivial(name):
    assert fourier_coefficients(standard_graph(name)) == {(): Fraction(1)}


def test_curve_polynomial():
    g = standard_graph("theta")
    P = curve_polynomial(g)
    assert P.coeff((0, 0, 0)) == 1
    assert P.coeff((1, 1, 0)) == 1
    assert len(P.terms) == 4
    Q = curve_polynomial(g, [curves(g)[1]])
    assert Q.coeff(tuple(1 if i in curves(g)[1] else 0 for i in range(3))) == -1
    with pytest.raises(InvalidCurveError):
        curve_polynomial(g, [(0,)])


def test_k33_series_coefficients():
    g = standard_graph("k33")
    s = spin_series_expand(g, 6)
    for k, v in s.items():
        assert admissible(g, k)
        assert v == chromatic_eval(g, k).value


def test_tetrahedron_diagonal():
    g = standard_graph("tetrahedron")
    d = diagonal_series(g, (2,) * 6, 3)
    assert d == [1, 96, -17010, -20160000]
    assert d == [v.value for v in scaled_sequence(g, (2,) * 6, 3)]


def test_csv_dump():
    s = spin_series_expand(standard_graph("theta"), 4)
    text = s.dump_csv(["a", "b", "c"])
    assert text.splitlines()[0] == "a,b,c,coefficient"
    assert "2,2,0,-3" in text.splitlines() or any(l.startswith("2,2,0,") for l in text.splitlines())
