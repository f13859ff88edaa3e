import itertools
from fractions import Fraction
from math import factorial

import pytest
from hypothesis import assume, given, strategies as st

from spinnet.evaluation import (ExactValue, all_normalizations, chromatic_eval, closed_form_sixj, closed_form_theta,
                                convert_normalization, family_eval, i_factorial, penrose_state_sum,
                                scaled_sequence, standard_value)
from spinnet.errors import CapacityError
from spinnet.graph import admissible, insert_zero_edge, standard_graph

THETA = standard_graph("theta")
TET = standard_graph("tetrahedron")


def theta_oracle_B(a, b, c):
    """Projector-normalized theta (-1)^(x+y+z) (x+y+z+1)! x! y! z! / (a! b! c!)."""
    x, y, z = (b + c - a) // 2, (a + c - b) // 2, (a + b - c) // 2
    return Fraction((-1) ** (x + y + z) * factorial(x + y + z + 1) * factorial(x) * factorial(y) * factorial(z),
                    factorial(a) * factorial(b) * factorial(c))


def test_known_values():
    assert penrose_state_sum(THETA, (1, 1, 2)).value == 6
    assert standard_value(THETA, (2, 2, 2)).value == -24
    assert standard_value(TET, (2,) * 6).value == 96
    assert chromatic_eval(standard_graph("circle"), (3,)).value == -4
    assert chromatic_eval(standard_graph("circle"), (0,)).value == 1


def test_normalizations_of_theta_222():
    v = all_normalizations(standard_value(THETA, (2, 2, 2)), THETA, (2, 2, 2))
    assert v["P"].value == -24 and v["standard"].value == -24
    assert v["B"].value == -3
    assert v["U"].value == -1 and v["U"].radicand == 1


def test_tetrahedron_state_chromatic_closed_agree():
    col = (2,) * 6
    p = penrose_state_sum(TET, col).value
    assert p == i_factorial(TET, col) * chromatic_eval(TET, col).value == i_factorial(TET, col) * 96


def _admissible_colorings(g, cmax):
    return [c for c in itertools.product(range(cmax + 1), repeat=g.n_edges) if admissible(g, c)]


THETA_COLS = _admissible_colorings(THETA, 9)
TET_COLS = _admissible_colorings(TET, 5)
NORMS = st.sampled_from(["P", "standard", "B", "U"])


@given(st.sampled_from(THETA_COLS))
def test_theta_closed_form_matches_oracle(col):
    want = theta_oracle_B(*col)
    assert convert_normalization(closed_form_theta(*col), THETA, col, "B").value == want
    assert convert_normalization(chromatic_eval(THETA, col), THETA, col, "B").value == want


@given(st.sampled_from([c for c in TET_COLS if max(c) <= 4]))
def test_sixj_closed_form_matches_chromatic(col):
    assert closed_form_sixj(col).value == chromatic_eval(TET, col).value


@given(st.sampled_from(TET_COLS), NORMS, NORMS)
def test_conversion_roundtrip(col, src, dst):
    v = standard_value(TET, col)
    a = convert_normalization(v, TET, col, src)
    b = convert_normalization(a, TET, col, dst)
    assert convert_normalization(b, TET, col, "standard") == v


@given(st.sampled_from(["theta", "tetrahedron"]), st.data())
def test_flip_sign_lemma(name, data):
    g = standard_graph(name)
    col = data.draw(st.sampled_from(THETA_COLS if name == "theta" else TET_COLS).filter(lambda c: max(c) <= 3))
    v = data.draw(st.integers(0, len(g.vertices) - 1))
    a, b, c = (col[e] for e in g.vertex_edges(v))
    sign = (-1) ** ((a * (a - 1) + b * (b - 1) + c * (c - 1)) // 2)
    assert penrose_state_sum(g.flip_vertex(v), col).value == sign * penrose_state_sum(g, col).value


def test_zero_edge_insertion_keeps_value():
    ng, z, split = insert_zero_edge(TET, "a", "c")
    col = {e: 2 for e in ng.edge_ids}
    col[z] = 0
    assert chromatic_eval(ng, col).value == 96


def test_exact_value_serialization():
    v = ExactValue(Fraction(-7, 3), "U", 6)
    assert ExactValue.from_json(v.to_json()) == v
    assert ExactValue.parse(str(v), "U") == v


def test_scaled_sequence_parallel_matches_serial():
    a = scaled_sequence(TET, (2,) * 6, 8, "U")
    b = scaled_sequence(TET, (2,) * 6, 8, "U", jobs=3)
    assert a == b
    assert a[0].value == 1 and a[1].value == Fraction(1, 6)


def test_families():
    assert all(family_eval("drum", c, 1).value == 0 for c in (2, 4, 6))
    assert family_eval("k33", 4).value == 4184460
    assert family_eval("k33", 2).value == 0
    d2 = standard_graph("drum2")
    assert family_eval("drum", 4, 2).value == chromatic_eval(d2, (4,) * d2.n_edges).value


def test_state_sum_budget():
    with pytest.raises(CapacityError):
        penrose_state_sum(TET, (2,) * 6, budget=10)
