from collections import Counter
from math import comb

import networkx as nx
import pytest
from hypothesis import given

from config.settings import settings
from conftest import PROPERTY_SETTINGS, graphs_with_subset, to_networkx
from core.cliques import (
    alpha_b,
    clique_counts,
    degeneracy_order,
    enumerate_cliques,
    omega_b,
    weighted_clique_counts,
)
from core.exceptions import CliqueCapExceededError, InvalidParameterError
from core.graph import VertexSet, complement, generate


def _networkx_counts(g, b):
    sub = to_networkx(g).subgraph(b.members)
    sizes = Counter(len(c) for c in nx.enumerate_all_cliques(sub))
    top = max(sizes, default=0)
    return [1] + [sizes[i] for i in range(1, top + 1)]


@PROPERTY_SETTINGS
@given(graphs_with_subset(max_n=7))
def test_counts_match_networkx(case):
    g, b = case
    assert list(clique_counts(g, b).counts) == _networkx_counts(g, b)


@PROPERTY_SETTINGS
@given(graphs_with_subset(max_n=7))
def test_omega_and_alpha_match_networkx(case):
    g, b = case
    sub = to_networkx(g).subgraph(b.members)
    omega = max((len(c) for c in nx.find_cliques(sub)), default=0)
    alpha = max((len(c) for c in nx.find_cliques(nx.complement(sub))), default=0)
    assert omega_b(g, b) == omega
    assert alpha_b(g, b) == alpha
    assert alpha_b(g, b) == omega_b(complement(g), b)


def test_triangle_counts(triangle):
    g, b = triangle
    counts = clique_counts(g, b)
    assert counts.counts == (1, 2, 1)
    assert counts.total == 4 and counts[5] == 0
    assert clique_counts(g, VertexSet.full(3)).counts == (1, 3, 3, 1)


def test_empty_b_has_only_the_empty_clique(petersen):
    assert clique_counts(petersen, VertexSet.empty(10)).counts == (1,)
    assert omega_b(petersen, VertexSet.empty(10)) == 0
    assert alpha_b(petersen, VertexSet.empty(10)) == 0


def test_petersen_invariants(petersen):
    full = VertexSet.full(10)
    assert clique_counts(petersen, full).counts == (1, 10, 15)
    assert omega_b(petersen, full) == 2
    assert alpha_b(petersen, full) == 4


def test_weighted_counts_multiply_weights(triangle):
    g, _ = triangle
    weights = {0: 2, 1: 3, 2: 5}
    assert weighted_clique_counts(g, VertexSet.full(3), weights.__getitem__) == [1, 10, 31, 30]


def test_enumeration_order_and_cap():
    k3 = generate('complete', 3)
    cliques = enumerate_cliques(k3, VertexSet.full(3), cap=8)
    assert [c.members for c in cliques] == [(), (0,), (1,), (2,), (0, 1), (0, 2), (1, 2), (0, 1, 2)]
    with pytest.raises(CliqueCapExceededError):
        enumerate_cliques(k3, VertexSet.full(3), cap=7)
    with pytest.raises(InvalidParameterError):
        enumerate_cliques(k3, VertexSet.full(3), cap=0)


def test_enumeration_stays_inside_b(triangle):
    g, b = triangle
    assert [c.members for c in enumerate_cliques(g, b, cap=100)] == [(), (0,), (1,), (0, 1)]


def test_degeneracy_order_is_a_permutation_of_the_mask(petersen):
    order = degeneracy_order(petersen, VertexSet.of(10, [1, 4, 6, 9]).mask)
    assert sorted(order) == [1, 4, 6, 9]


def test_host_mismatch_is_rejected(petersen):
    with pytest.raises(InvalidParameterError):
        clique_counts(petersen, VertexSet.full(3))


def test_enumeration_cap_defaults_to_settings(monkeypatch):
    monkeypatch.setattr(settings, 'ENUM_CAP', 3)
    with pytest.raises(CliqueCapExceededError, match="more than 3"):
        enumerate_cliques(generate('complete', 3), VertexSet.full(3))


def test_counts_on_large_complete_graph():
    counts = clique_counts(generate('complete', 40), VertexSet.full(40))
    assert counts.counts == tuple(comb(40, i) for i in range(41))
    assert counts.total == 2 ** 40


def test_weighted_counts_on_large_complete_graph():
    # each vertex weighs 2, so the i-th entry is comb(n, i) * 2^i
    g = generate('complete', 32)
    counts = weighted_clique_counts(g, VertexSet.full(32), lambda v: 2)
    assert counts == [comb(32, i) * 2 ** i for i in range(33)]
