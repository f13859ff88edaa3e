from fractions import Fraction
from math import comb, prod

import mpmath
import pytest
from hypothesis import assume, given, settings, strategies as st

from spinnet import reference as ref
from spinnet.asymptotics import (W_value, central_binomial_term, engine_stokes, lambda_routes,
                                 plane_stokes_closed_form, ponzano_regge, predict_and_compare, sixj_expansion,
                                 sixj_term, spectral_radius_estimate, term_asymptotics_1d, theta_norm_asym)
from spinnet.errors import DegenerateError
from spinnet.geometry import dihedral_angles, faces, half_sums, is_degenerate, variational_solve
from spinnet.graph import curves, standard_graph
from spinnet.quadnum import QuadNum

TET = standard_graph("tetrahedron")
CYCLES = [c for c in curves(TET) if c]


def _from_cycles(mult):
    col = [0] * 6
    for m, c in zip(mult, CYCLES):
        for e in c:
            col[e] += m
    return tuple(col)


tetra = st.lists(st.integers(0, 6), min_size=7, max_size=7).map(_from_cycles)


@pytest.fixture(autouse=True)
def _dps():
    mpmath.mp.dps = 40
    yield
    mpmath.mp.dps = 15


def test_central_binomial_engine():
    (b,) = term_asymptotics_1d(central_binomial_term(), 30).branches
    assert abs(b.Lambda - 2) < 1e-25 and b.alpha == 0 and abs(b.S - 1) < 1e-25


def test_euclidean_growth_exact():
    exp = sixj_expansion(ref.EUCLIDEAN_LABELS)
    lams = {b.label: b.Lambda_exact for b in exp.branches}
    assert lams["+"] == ref.EUCLIDEAN["+"]["Lambda"]
    assert lams["+"] * lams["-"] == 1
    assert all(abs(abs(b.Lambda) - 1) < 1e-30 for b in exp.branches)
    assert exp.field == -2


def test_minkowskian_growth():
    exp = sixj_expansion(ref.MINKOWSKIAN_LABELS)
    a, b = (x.Lambda_exact for x in exp.branches)
    assert a * b == 1
    assert sum(abs(x.Lambda) < 1 for x in exp.branches) == 1
    (c,) = exp.contributing()
    assert c.Lambda_exact == ref.MINKOWSKIAN["+"]["Lambda"]
    assert abs(c.Lambda - ref.MINKOWSKIAN_LAMBDA_FLOAT) < 1e-6


def test_plane_branches():
    exp = sixj_expansion(ref.PLANE_LABELS)
    assert [b.alpha for b in exp.branches] == [Fraction(-4, 3), Fraction(-5, 3)]
    assert all(b.Lambda_exact == QuadNum(-1) for b in exp.branches)
    # the single published constant lacks the sqrt(3)/2 chord factor of the cubic saddle
    assert abs(exp.branches[0].S - plane_stokes_closed_form(ref.PLANE_LABELS) * mpmath.sqrt(3) / 2) < 1e-12
    assert abs(plane_stokes_closed_form(ref.PLANE_LABELS) - ref.PLANE_STOKES_PUBLISHED) < 1e-6


@settings(max_examples=40)
@given(tetra)
def test_angle_and_product_routes_agree(L):
    assume(not is_degenerate(L))
    try:
        routes = lambda_routes(L, 40)
    except DegenerateError:
        assume(False)
    for a, b in routes:
        assert abs(a - b) < 1e-30


@settings(max_examples=40)
@given(tetra)
def test_lambda_theta_identity(L):
    assume(not is_degenerate(L))
    try:
        vd = variational_solve(L)
    except DegenerateError:
        assume(False)
    hs = half_sums(L)
    ts = sum(dihedral_angles(L, 40))
    s = prod(theta_norm_asym(L, 0)["s"])
    for sg, v in ((1, vd.roots[0]), (-1, vd.roots[1])):
        u = v.to_mp()
        lhs = (s * W_value(sixj_term(L), u)) ** 2
        rhs = -mpmath.exp(sg * 1j * ts) / prod(u - mpmath.mpf(t.numerator) / t.denominator for t in hs.T)
        assert abs(lhs - rhs) < 1e-25 * (1 + abs(rhs))


def test_theta_norm_all_two():
    d = theta_norm_asym((2,) * 6, 4)
    assert d["growth_squared"] == Fraction(1, 3 ** 12)
    assert d["mu"][0] == 1
    assert abs(d["s"][0] - (mpmath.mpf(48) ** 0.25) / 6) < 1e-30


def test_ponzano_regge_at_100():
    from spinnet.acceptance import _u_value
    exact = _u_value(ref.EUCLIDEAN_LABELS, 100).to_mp()
    assert abs(ponzano_regge(ref.EUCLIDEAN_LABELS, 100) / exact - 1) < 0.05


def test_predict_rows():
    rows = predict_and_compare(ref.EUCLIDEAN_LABELS, range(0, 12), 30)
    assert rows[0][1].value == 1 and mpmath.isnan(rows[0][2])
    assert all(not mpmath.isnan(r[4]) for r in rows[5:])


def test_engine_matches_closed_forms():
    eng = engine_stokes(ref.EUCLIDEAN_LABELS)
    exp = sixj_expansion(ref.EUCLIDEAN_LABELS).branches
    assert len(eng) == 2
    for b, S in eng:
        lam_u = b.Lambda * theta_norm_asym(ref.EUCLIDEAN_LABELS, 0)["growth"]
        (match,) = [x for x in exp if abs(x.Lambda - lam_u) < 1e-20]
        assert abs(S - match.S) < 1e-12


def test_degenerate_asymptotics_refused():
    with pytest.raises(DegenerateError):
        sixj_expansion((1, 1, 2, 1, 1, 2))


def test_spectral_radius_theta_and_circle():
    est, diag = spectral_radius_estimate(standard_graph("theta"), 150)
    assert abs(est / 27 - 1) < 0.02 and diag["oscillating"]
    est, diag = spectral_radius_estimate(standard_graph("circle"), 150)
    assert abs(est - 1) < 0.01 and not diag["oscillating"]
