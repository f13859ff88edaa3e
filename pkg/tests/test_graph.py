import pytest
from hypothesis import given, strategies as st

from spinnet.errors import CapacityError, ParseError
from spinnet.graph import (admissible, admissible_triple, curves, cycle_space_dimension, format_graph,
                           insert_zero_edge, is_curve, parse_coloring, parse_graph, standard_graph)

NAMES = ["theta", "tetrahedron", "k33", "cube", "drum1", "drum2", "drum3", "circle"]


@pytest.mark.parametrize("name,count", [("theta", 4), ("tetrahedron", 8), ("k33", 16), ("cube", 32),
                                        ("drum1", 4), ("drum2", 8), ("drum3", 16), ("circle", 2)])
def test_curve_counts_are_powers_of_two(name, count):
    g = standard_graph(name)
    cs = curves(g)
    assert len(cs) == count == 2 ** cycle_space_dimension(g)
    assert all(is_curve(g, c) for c in cs)


def test_surface_data():
    assert standard_graph("tetrahedron").faces() == 4
    assert standard_graph("tetrahedron").genus() == 0
    assert standard_graph("theta").genus() == 0
    assert standard_graph("k33").genus() == 1


@pytest.mark.parametrize("name", NAMES)
def test_text_roundtrip(name):
    g = standard_graph(name)
    assert parse_graph(format_graph(g)) == g


def test_parse_errors():
    with pytest.raises(ParseError):
        parse_graph("vertex v: a b\n")
    with pytest.raises(ParseError):
        parse_graph("vertex v: a b c\nedge e: a b\n")  # c dangles
    with pytest.raises(ParseError):
        parse_coloring("a 2\na 3\n")
    with pytest.raises(ParseError):
        parse_coloring("a -1\n")
    with pytest.raises(ParseError):
        standard_graph("dodecahedron")


@given(st.integers(0, 12), st.integers(0, 12), st.integers(0, 12))
def test_admissible_triple_symmetric(a, b, c):
    v = admissible_triple(a, b, c)
    assert v == admissible_triple(b, c, a) == admissible_triple(b, a, c)
    assert v == ((a + b + c) % 2 == 0 and a <= b + c and b <= a + c and c <= a + b)


def test_admissible_graph_coloring():
    g = standard_graph("theta")
    assert admissible(g, (2, 2, 2))
    assert not admissible(g, (1, 1, 1))
    assert not admissible(g, (1, 1, 4))


@pytest.mark.parametrize("e1,e2", [("a", "a"), ("a", "b"), ("a", "d")])
def test_insert_zero_edge_shape(e1, e2):
    g = standard_graph("tetrahedron")
    ng, z, split = insert_zero_edge(g, e1, e2)
    assert len(ng.vertices) == len(g.vertices) + 2
    assert ng.n_edges == g.n_edges + 3
    assert z in ng.edge_ids
    assert [old for old, _ in split][0] == e1


def test_curve_capacity_guard():
    from spinnet.graph import drum_graph
    with pytest.raises(CapacityError):
        curves(drum_graph(21))
