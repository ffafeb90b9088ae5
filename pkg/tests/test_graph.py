import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import PROPERTY_SETTINGS, graphs, to_networkx
from core.cliques import enumerate_cliques
from core.corpus import all_subsets, graphs_up_to_isomorphism
from core.exceptions import (
    EdgeAbsentError,
    GraphParseError,
    InvalidParameterError,
    NotACliqueError,
    UnknownVertexError,
)
from core.graph import (
    Graph,
    VertexSet,
    WeightMap,
    blow_up,
    complement,
    delete_edge,
    delete_vertex,
    disjoint_union,
    generate,
    induced_subgraph,
    join,
    n_b_of_clique,
    n_b_of_vertex,
    parse_edge_list,
    parse_vertex_set,
    parse_weight_map,
    serialize_edge_list,
    union_vertex_set,
)


# ---------- parsing ----------

def test_parse_assigns_ids_in_first_appearance_order():
    g = parse_edge_list("\ufeff# header\r\nb a\r\n\r\na c\n")
    assert g.labels == ('b', 'a', 'c')
    assert g.edges() == [(0, 1), (1, 2)]


def test_parse_collapses_repeated_edges():
    g = parse_edge_list("a b\nb a\na b\n")
    assert g.edge_count() == 1


def test_parse_reports_line_of_malformed_entry():
    with pytest.raises(GraphParseError, match="line 3"):
        parse_edge_list("a b\n\nc\n")


def test_parse_rejects_self_loop():
    with pytest.raises(GraphParseError, match="line 1"):
        parse_edge_list("a a\n")


def test_parse_empty_text_gives_empty_graph():
    g = parse_edge_list("# nothing here\n")
    assert g.n == 0 and g.edges() == []


def test_vertex_set_by_label(triangle):
    g, b = triangle
    assert b.members == (0, 1)
    assert parse_vertex_set("", g).members == ()


def test_vertex_set_unknown_token(triangle):
    g, _ = triangle
    with pytest.raises(UnknownVertexError, match="'z'"):
        parse_vertex_set("a z", g)


def test_vertex_set_by_id_on_unlabelled_graph(petersen):
    assert parse_vertex_set("3 0 3", petersen).members == (0, 3)
    with pytest.raises(UnknownVertexError):
        parse_vertex_set("10", petersen)


def test_weight_map_parsing(triangle):
    g, _ = triangle
    w = parse_weight_map("a 2\nb 1\n", g)
    assert w.as_dict() == {0: 2, 1: 1}


@pytest.mark.parametrize("text", ["a 0\n", "a 1\na 2\n", "a x\n", "a 1 2\n"])
def test_weight_map_rejects_bad_lines(triangle, text):
    g, _ = triangle
    with pytest.raises(GraphParseError):
        parse_weight_map(text, g)


def test_weight_map_domain_must_match_b(triangle):
    g, b = triangle
    with pytest.raises(InvalidParameterError, match="missing"):
        WeightMap.of({0: 1}).check_domain(b)


@PROPERTY_SETTINGS
@given(graphs(max_n=7), st.randoms(use_true_random=False))
def test_serialize_reparses_to_the_same_graph(g, rnd):
    lines = [f"v{u} v{v}" for u, v in g.edges()]
    rnd.shuffle(lines)
    parsed = parse_edge_list("\n".join(lines))
    assert parse_edge_list(serialize_edge_list(parsed)) == parsed


# ---------- generators ----------

def test_petersen_matches_networkx(petersen):
    assert petersen.n == 10 and petersen.edge_count() == 15
    assert set(petersen.degrees()) == {3}
    assert nx.is_isomorphic(to_networkx(petersen), nx.petersen_graph())


def test_star_is_k_1_n():
    g = generate('star', 3)
    assert g.degrees() == (3, 1, 1, 1)


def test_named_families():
    assert generate('complete', 5).edge_count() == 10
    assert generate('cycle', 6).degrees() == (2,) * 6
    assert generate('path', 4).edges() == [(0, 1), (1, 2), (2, 3)]
    assert generate('empty', 3).edge_count() == 0


def test_gnp_is_deterministic_per_seed():
    assert generate('gnp', 9, p=0.5, seed=7) == generate('gnp', 9, p=0.5, seed=7)
    assert generate('gnp', 6, p=1.0, seed=1).edge_count() == 15
    assert generate('gnp', 6, p=0.0, seed=1).edge_count() == 0


def test_random_regular_degrees():
    g = generate('random_regular', 12, d=4, seed=3)
    assert set(g.degrees()) == {4}
    assert g == generate('random_regular', 12, d=4, seed=3)


@pytest.mark.parametrize("kwargs", [
    {"kind": "random_regular", "n": 5, "d": 3},
    {"kind": "random_regular", "n": 4, "d": 4},
    {"kind": "gnp", "n": 4, "p": 1.5},
    {"kind": "cycle", "n": 2},
    {"kind": "hypercube", "n": 3},
])
def test_generator_parameter_errors(kwargs):
    with pytest.raises(InvalidParameterError):
        generate(**kwargs)


# ---------- structure ----------

def test_graph_rejects_asymmetric_rows():
    with pytest.raises(InvalidParameterError):
        Graph(2, (0b10, 0))


def test_delete_vertex_remaps_ids(triangle):
    g, _ = triangle
    rest, remap = delete_vertex(g, 1)
    assert rest.labels == ('a', 'c')
    assert rest.edges() == [(0, 1)]
    assert remap == (0, -1, 1)


def test_delete_edge():
    path = generate('path', 3)
    assert delete_edge(path, 1, 0).edges() == [(1, 2)]
    with pytest.raises(EdgeAbsentError):
        delete_edge(path, 0, 2)


def test_induced_subgraph(petersen):
    h, members = induced_subgraph(petersen, VertexSet.of(10, [0, 1, 2]))
    assert members == (0, 1, 2)
    assert h.edges() == [(0, 1), (1, 2)]


@PROPERTY_SETTINGS
@given(graphs())
def test_complement_matches_networkx(g):
    expected = {frozenset(e) for e in nx.complement(to_networkx(g)).edges()}
    assert {frozenset(e) for e in complement(g).edges()} == expected


def test_union_and_join_sizes():
    k3, k2 = generate('complete', 3), generate('complete', 2)
    assert disjoint_union(k3, k2).edge_count() == 4
    assert join(k3, k2).edge_count() == 3 + 1 + 6
    b = union_vertex_set(VertexSet.of(3, [0]), VertexSet.of(2, [1]))
    assert b.members == (0, 4) and b.host_n == 5


def test_blow_up_of_an_edge_is_complete_bipartite():
    g = generate('complete', 2)
    blown = blow_up(g, VertexSet.full(2), WeightMap.of({0: 2, 1: 3}))
    assert blown.clusters == ((0, 1), (2, 3, 4))
    assert blown.graph.edge_count() == 6
    assert blown.vertex_set == VertexSet.full(5)
    assert nx.is_isomorphic(to_networkx(blown.graph), nx.complete_bipartite_graph(2, 3))


def test_blow_up_copies_inherit_outside_edges():
    g = generate('path', 3)
    blown = blow_up(g, VertexSet.of(3, [0]), WeightMap.of({0: 2}))
    assert blown.graph.edges() == [(0, 2), (1, 2), (2, 3)]
    assert blown.vertex_set.members == (0, 1)


def test_blow_up_labels(triangle):
    g, b = triangle
    blown = blow_up(g, b, WeightMap.of({0: 2, 1: 1}))
    assert blown.graph.labels == ('a#0', 'a#1', 'b', 'c')


def test_restricted_neighbourhoods(triangle, petersen):
    g, b = triangle
    assert n_b_of_vertex(g, b, 2).members == (0, 1)
    assert n_b_of_clique(g, b, VertexSet.of(3, [2])).members == (0, 1)
    assert n_b_of_clique(g, b, VertexSet.empty(3)) == b
    with pytest.raises(NotACliqueError):
        n_b_of_clique(petersen, VertexSet.full(10), VertexSet.of(10, [0, 2]))


# ---------- structural invariants ----------

@PROPERTY_SETTINGS
@given(graphs(min_n=2, max_n=7), st.data())
def test_vertex_deletions_commute(g, data):
    u = data.draw(st.integers(min_value=0, max_value=g.n - 1))
    v = data.draw(st.integers(min_value=0, max_value=g.n - 1).filter(lambda x: x != u))
    first, remap_u = delete_vertex(g, u)
    u_then_v, _ = delete_vertex(first, remap_u[v])
    second, remap_v = delete_vertex(g, v)
    v_then_u, _ = delete_vertex(second, remap_v[u])
    assert u_then_v == v_then_u
    survivors = VertexSet.of(g.n, (x for x in range(g.n) if x not in (u, v)))
    assert u_then_v.rows == induced_subgraph(g, survivors)[0].rows


def test_clique_neighbourhood_is_the_intersection_of_vertex_neighbourhoods():
    for n in range(1, 6):
        for g in graphs_up_to_isomorphism(n):
            cliques = enumerate_cliques(g, VertexSet.full(n))
            for b in all_subsets(n):
                for k in cliques:
                    expected = b.mask
                    for v in k:
                        expected &= n_b_of_vertex(g, b, v).mask
                    assert n_b_of_clique(g, b, k).mask == expected


@PROPERTY_SETTINGS
@given(graphs(max_n=7), st.data())
def test_blow_up_with_unit_weights_is_isomorphic(g, data):
    mask = data.draw(st.integers(min_value=0, max_value=(1 << g.n) - 1)) if g.n else 0
    b = VertexSet.from_mask(g.n, mask)
    blown = blow_up(g, b, WeightMap.uniform(b))
    assert nx.is_isomorphic(to_networkx(blown.graph), to_networkx(g))
    assert blown.graph.rows == g.rows
    assert blown.vertex_set == b
