"""Flag complex construction against brute-force triangle enumeration."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from netscaffold.complexes import Simplex, complexes_along, flag_complex_at
from netscaffold.graph import build_filtration, make_graph

from .conftest import SQRT2
from .oracles import flag_triangles


class TestSimplex:
    def test_dim(self):
        assert Simplex((3,), Fraction(0)).dim == 0
        assert Simplex((1, 2), Fraction(1)).dim == 1

    def test_vertices_must_ascend(self):
        with pytest.raises(ValueError):
            Simplex((2, 1), Fraction(1))
        with pytest.raises(ValueError):
            Simplex((1, 1), Fraction(1))


class TestUnitSquare:
    def test_below_diagonal_threshold(self, unit_square):
        cx = flag_complex_at(unit_square, Fraction(1))
        assert cx.n_edges == 4
        assert cx.triangles == ()

    def test_at_diagonal_threshold(self, unit_square):
        cx = flag_complex_at(unit_square, SQRT2)
        assert cx.n_edges == 6
        assert cx.triangles == ((0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3))

    def test_triangle_value_is_max_edge(self, unit_square):
        cx = flag_complex_at(unit_square, SQRT2)
        assert cx.triangle_value((0, 1, 2)) == SQRT2


class TestDeterministicOrder:
    def test_edges_sorted_by_weight_then_pair(self):
        g = make_graph(4, [(2, 3, 1), (0, 1, 2), (0, 2, 1)])
        cx = flag_complex_at(g, Fraction(2))
        assert [cx.edge_vertices(p) for p in range(3)] == [(0, 2), (2, 3), (0, 1)]

    def test_edge_position_lookup(self, unit_square):
        cx = flag_complex_at(unit_square, SQRT2)
        for p in range(cx.n_edges):
            u, v = cx.edge_vertices(p)
            assert cx.edge_position(u, v) == p
            assert cx.edge_position(v, u) == p

    def test_simplex_views(self, unit_square):
        cx = flag_complex_at(unit_square, SQRT2)
        fvals = [s.filtration_value for s in cx.edge_simplices()]
        assert fvals == sorted(fvals)
        assert all(s.dim == 2 for s in cx.triangle_simplices())


class TestAlongFiltration:
    def test_one_complex_per_step_and_nested(self, unit_square):
        f = build_filtration(unit_square)
        seq = complexes_along(f)
        assert len(seq) == len(f.steps)
        for a, b in zip(seq, seq[1:]):
            assert set(a.edge_ids) <= set(b.edge_ids)
            assert set(a.triangles) <= set(b.triangles)


@st.composite
def graph_and_eps(draw):
    n = draw(st.integers(min_value=2, max_value=8))
    possible = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(possible), unique=True, min_size=1, max_size=len(possible)))
    weights = draw(
        st.lists(
            st.fractions(min_value=0, max_value=5),
            min_size=len(chosen),
            max_size=len(chosen),
        )
    )
    g = make_graph(n, [(u, v, w) for (u, v), w in zip(chosen, weights)])
    eps = draw(st.fractions(min_value=0, max_value=5))
    return g, eps


@given(graph_and_eps())
@settings(max_examples=80, deadline=None)
def test_triangles_match_bruteforce(case):
    g, eps = case
    cx = flag_complex_at(g, eps)
    assert sorted(cx.triangles) == flag_triangles(g.n_vertices, list(g.edges), eps)
    # ordered by appearance value, vertex triple breaking ties
    keys = [(cx.triangle_value(t), t) for t in cx.triangles]
    assert keys == sorted(keys)
    for p in range(cx.n_edges):
        assert cx.edge_weight(p) <= eps


@given(graph_and_eps())
@settings(max_examples=40, deadline=None)
def test_triangle_values_dominate_member_edges(case):
    g, eps = case
    cx = flag_complex_at(g, eps)
    for t in cx.triangles:
        u, v, w = t
        val = cx.triangle_value(t)
        for a, b in ((u, v), (u, w), (v, w)):
            assert cx.edge_weight(cx.edge_position(a, b)) <= val
