from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import PROPERTY_SETTINGS, graphs_with_subset
from core.clique_poly import (
    build_cpoly,
    cpoly_direct,
    cpoly_edge_recurrence,
    cpoly_vertex_recurrence,
    cpoly_weighted,
    edge_recurrence_terms,
    join_poly,
    total_cliques,
    union_poly,
    vertex_pivot,
    vertex_recurrence_terms,
)
from core.exceptions import InvalidParameterError, PolynomialShapeError
from core.graph import (
    VertexSet,
    WeightMap,
    blow_up,
    disjoint_union,
    generate,
    induced_subgraph,
    join,
    union_vertex_set,
)
from core.polynomial import IntPolynomial


def test_worked_example_three_ways(triangle):
    g, b = triangle
    for method in ('direct', 'vertex', 'edge'):
        assert build_cpoly(g, b, method).to_text() == "1 + 2*x + x^2"


def test_worked_example_decomposition(triangle):
    g, b = triangle
    first, second = vertex_recurrence_terms(g, b, g.label_index['a'])
    assert f"({first.to_text()}) + ({second.to_text()})" == "(1 + x) + (x + x^2)"


def test_vertex_outside_b_contributes_nothing(triangle):
    g, b = triangle
    first, second = vertex_recurrence_terms(g, b, g.label_index['c'])
    assert second.is_zero()
    assert first == IntPolynomial([1, 2, 1])


def test_edge_with_an_endpoint_outside_b(triangle):
    g, b = triangle
    first, second = edge_recurrence_terms(g, b, 0, 2)
    assert second.is_zero() and first == IntPolynomial([1, 2, 1])
    first, second = edge_recurrence_terms(g, b, 0, 1)
    assert first == IntPolynomial([1, 2]) and second == IntPolynomial([0, 0, 1])


def test_pivot_prefers_degree_then_lowest_id():
    star = generate('star', 3)
    assert vertex_pivot(star, VertexSet.full(4)) == 0
    assert vertex_pivot(star, VertexSet.of(4, [1, 2])) == 1


def test_empty_b_gives_one(petersen):
    for method in ('direct', 'vertex', 'edge'):
        assert build_cpoly(petersen, VertexSet.empty(10), method) == IntPolynomial.one()


def test_known_polynomials(petersen, c5):
    assert cpoly_direct(petersen, VertexSet.full(10)) == IntPolynomial([1, 10, 15])
    assert cpoly_direct(c5, VertexSet.full(5)) == IntPolynomial([1, 5, 5])
    assert total_cliques(generate('complete', 4), VertexSet.full(4)) == 16


def test_unknown_method(triangle):
    g, b = triangle
    with pytest.raises(InvalidParameterError, match="unknown method"):
        build_cpoly(g, b, 'magic')


@PROPERTY_SETTINGS
@given(graphs_with_subset(max_n=7))
def test_three_constructions_agree(case):
    g, b = case
    direct = cpoly_direct(g, b)
    assert cpoly_vertex_recurrence(g, b) == direct
    assert cpoly_edge_recurrence(g, b) == direct


@PROPERTY_SETTINGS
@given(graphs_with_subset(max_n=7))
def test_polynomial_depends_only_on_induced_subgraph(case):
    g, b = case
    h, _ = induced_subgraph(g, b)
    assert cpoly_direct(g, b) == cpoly_direct(h, VertexSet.full(h.n))


@PROPERTY_SETTINGS
@given(graphs_with_subset(max_n=5), graphs_with_subset(max_n=5))
def test_union_and_join_identities(left, right):
    g, b_g = left
    h, b_h = right
    b = union_vertex_set(b_g, b_h)
    p, q = cpoly_direct(g, b_g), cpoly_direct(h, b_h)
    assert cpoly_direct(disjoint_union(g, h), b) == union_poly(p, q)
    assert cpoly_direct(join(g, h), b) == join_poly(p, q)


@PROPERTY_SETTINGS
@given(graphs_with_subset(max_n=6), st.data())
def test_blow_up_identity(case, data):
    g, b = case
    w = WeightMap.of({v: data.draw(st.integers(min_value=1, max_value=3)) for v in b})
    blown = blow_up(g, b, w)
    assert cpoly_weighted(g, b, w) == cpoly_direct(blown.graph, blown.vertex_set)


def test_unit_weights_give_the_plain_polynomial(petersen):
    b = VertexSet.of(10, [0, 1, 2, 5, 7])
    assert cpoly_weighted(petersen, b, WeightMap.uniform(b)) == cpoly_direct(petersen, b)


def test_weights_must_cover_b(triangle):
    g, b = triangle
    with pytest.raises(InvalidParameterError):
        cpoly_weighted(g, b, WeightMap.of({0: 2}))


def test_compositions_need_unit_constant_term():
    with pytest.raises(PolynomialShapeError):
        union_poly(IntPolynomial([2, 1]), IntPolynomial.one())
    with pytest.raises(PolynomialShapeError):
        join_poly(IntPolynomial.one(), IntPolynomial([0, 1]))


# ---------- large sparse graphs ----------

@pytest.mark.parametrize("kind, n, expected", [
    ('path', 600, [1, 600, 599]),
    ('cycle', 600, [1, 600, 600]),
    ('star', 300, [1, 301, 300]),
])
def test_recurrences_on_hundreds_of_vertices(kind, n, expected):
    g = generate(kind, n)
    b = VertexSet.full(g.n)
    for method in ('direct', 'vertex', 'edge'):
        assert build_cpoly(g, b, method) == IntPolynomial(expected)


def test_recurrences_agree_on_sparse_random_graph():
    g = generate('gnp', 200, p=0.01, seed=3)
    b = VertexSet.of(g.n, range(0, 200, 2))
    direct = cpoly_direct(g, b)
    assert cpoly_vertex_recurrence(g, b) == direct
    assert cpoly_edge_recurrence(g, b) == direct


def test_vertex_recurrence_on_large_complete_graph():
    g = generate('complete', 40)
    expected = IntPolynomial([comb(40, i) for i in range(41)])
    assert cpoly_vertex_recurrence(g, VertexSet.full(40)) == expected
