"""The B-restricted clique polynomial C_B(G;x), built three independent ways.

``cpoly_direct`` reads the coefficients off the clique counts. The two
recurrences rebuild the same polynomial from smaller graphs by deleting a
vertex or an edge; both memoise on the adjacency rows of G[B], since C_B(G)
depends on G[B] alone. The memo lives for one top-level call, and the
recurrence tree is walked on an explicit stack rather than by recursion.
"""
from __future__ import annotations

import logging
from typing import Callable, Dict, List, Tuple, Union

from core.cliques import clique_counts, weighted_clique_counts
from core.exceptions import InvalidParameterError, PolynomialShapeError
from core.graph import Graph, VertexSet, WeightMap, delete_edge, delete_vertex, induced_subgraph
from core.polynomial import IntPolynomial

logger = logging.getLogger(__name__)

Memo = Dict[Tuple[int, ...], IntPolynomial]


def _check_host(g: Graph, b: VertexSet):
    if b.host_n != g.n:
        raise InvalidParameterError(f"vertex set belongs to a host with {b.host_n} vertices, graph has {g.n}")


def _core(g: Graph, b: VertexSet) -> Graph:
    """G[B] densely reindexed; its rows are the memo key."""
    core, _ = induced_subgraph(g, b)
    return core


def _restrict_to(g: Graph, s: VertexSet, b: VertexSet) -> Tuple[Graph, VertexSet]:
    """G[s] together with B ∩ s expressed in the new ids."""
    h, members = induced_subgraph(g, s)
    return h, VertexSet.of(h.n, (i for i, old in enumerate(members) if old in b))


def cpoly_direct(g: Graph, b: VertexSet) -> IntPolynomial:
    """C_B(G;x) = sum_i c_i(B) x^i."""
    return IntPolynomial(clique_counts(g, b).counts)


def total_cliques(g: Graph, b: VertexSet) -> int:
    """C_B(G;1), the number of cliques inside B (the empty one included)."""
    return clique_counts(g, b).total


# ===================== shared evaluator ======================

Child = Tuple[Graph, VertexSet, int]
Split = Callable[[Graph, VertexSet], Union[IntPolynomial, List[Child]]]


def _evaluate(g: Graph, b: VertexSet, split: Split) -> Tuple[IntPolynomial, int]:
    """Run a recurrence bottom-up on an explicit stack.

    split returns either the polynomial of a base case or the children
    (graph, vertex set, power of x) whose shifted polynomials sum to the
    answer. Every subproblem is first reduced to G[B], whose rows are the memo
    key. Returns the polynomial and the number of memoised subproblems.
    """
    memo: Memo = {}
    pending: Dict[Tuple[int, ...], List[Tuple[Tuple[int, ...], int]]] = {}
    root = _core(g, b)
    stack = [root]
    while stack:
        core = stack[-1]
        key = core.rows
        if key in memo:
            stack.pop()
            continue
        if key not in pending:
            parts = split(core, VertexSet.full(core.n))
            if isinstance(parts, IntPolynomial):
                memo[key] = parts
                stack.pop()
                continue
            children = [(_core(h, hb), shift) for h, hb, shift in parts]
            pending[key] = [(child.rows, shift) for child, shift in children]
            stack.extend(child for child, _ in children if child.rows not in memo)
            continue
        result = IntPolynomial()
        for child_key, shift in pending.pop(key):
            result = result + memo[child_key].multiply_by_x_power(shift)
        memo[key] = result
        stack.pop()
    return memo[root.rows], len(memo)


# ===================== vertex recurrence ======================

def vertex_pivot(g: Graph, b: VertexSet) -> int:
    """highest-degree vertex of G[B], lowest id on ties."""
    return max(b.members, key=lambda v: ((g.rows[v] & b.mask).bit_count(), -v))


def _vertex_children(g: Graph, b: VertexSet, v: int) -> List[Child]:
    rest, remap = delete_vertex(g, v)
    children = [(rest, VertexSet.of(rest.n, (remap[u] for u in b if u != v)), 0)]
    if v in b:
        h, b_nb = _restrict_to(g, VertexSet.from_mask(g.n, g.rows[v]), b)
        children.append((h, b_nb, 1))
    return children


def _solve_children(children: List[Child],
                    solve: Callable[[Graph, VertexSet], IntPolynomial]) -> Tuple[IntPolynomial, IntPolynomial]:
    terms = [solve(h, hb).multiply_by_x_power(shift) for h, hb, shift in children]
    return terms[0], terms[1] if len(terms) > 1 else IntPolynomial()


def vertex_recurrence_terms(g: Graph, b: VertexSet, v: int,
                            solve: Callable[[Graph, VertexSet], IntPolynomial] = cpoly_direct
                            ) -> Tuple[IntPolynomial, IntPolynomial]:
    """The two summands of the vertex recurrence at v.

    v in B:      C_{B-v}(G-v)  and  x * C_{B∩N(v)}(G[N(v)])
    v not in B:  C_B(G-v)      and  0
    """
    _check_host(g, b)
    return _solve_children(_vertex_children(g, b, v), solve)


def _vertex_split(g: Graph, b: VertexSet) -> Union[IntPolynomial, List[Child]]:
    if not b.members:
        return IntPolynomial.one()
    return _vertex_children(g, b, vertex_pivot(g, b))


def cpoly_vertex_recurrence(g: Graph, b: VertexSet) -> IntPolynomial:
    _check_host(g, b)
    result, subproblems = _evaluate(g, b, _vertex_split)
    logger.debug(f"vertex recurrence: {subproblems} memoised subproblems")
    return result


# ===================== edge recurrence ======================

def first_edge_inside(g: Graph, b: VertexSet):
    """lexicographically smallest edge with both endpoints in B, or None."""
    mask = b.mask
    for u in b.members:
        above = g.rows[u] & mask & ~((1 << (u + 1)) - 1)
        if above:
            return u, (above & -above).bit_length() - 1
    return None


def _edge_children(g: Graph, b: VertexSet, u: int, v: int) -> List[Child]:
    children = [(delete_edge(g, u, v), b, 0)]
    if u in b and v in b:
        common = VertexSet.from_mask(g.n, g.rows[u] & g.rows[v])
        h, b_common = _restrict_to(g, common, b)
        children.append((h, b_common, 2))
    return children


def edge_recurrence_terms(g: Graph, b: VertexSet, u: int, v: int,
                          solve: Callable[[Graph, VertexSet], IntPolynomial] = cpoly_direct
                          ) -> Tuple[IntPolynomial, IntPolynomial]:
    """The two summands of the edge recurrence at uv.

    u, v both in B:  C_B(G-uv)  and  x^2 * C_{B∩N(u)∩N(v)}(G[N(u)∩N(v)])
    otherwise:       C_B(G-uv)  and  0   (no clique of B contains an outside endpoint)
    """
    _check_host(g, b)
    return _solve_children(_edge_children(g, b, u, v), solve)


def _edge_split(g: Graph, b: VertexSet) -> Union[IntPolynomial, List[Child]]:
    edge = first_edge_inside(g, b)
    if edge is None:
        return IntPolynomial([1, len(b)])
    return _edge_children(g, b, *edge)


def cpoly_edge_recurrence(g: Graph, b: VertexSet) -> IntPolynomial:
    _check_host(g, b)
    result, subproblems = _evaluate(g, b, _edge_split)
    logger.debug(f"edge recurrence: {subproblems} memoised subproblems")
    return result


METHODS: Dict[str, Callable[[Graph, VertexSet], IntPolynomial]] = {
    'direct': cpoly_direct,
    'vertex': cpoly_vertex_recurrence,
    'edge': cpoly_edge_recurrence,
}


def build_cpoly(g: Graph, b: VertexSet, method: str = 'direct') -> IntPolynomial:
    try:
        builder = METHODS[method]
    except KeyError:
        raise InvalidParameterError(f"unknown method '{method}' (choose from {', '.join(METHODS)})") from None
    return builder(g, b)


# ===================== weighted polynomial and compositions ======================

def cpoly_weighted(g: Graph, b: VertexSet, w: WeightMap) -> IntPolynomial:
    """Coefficient of x^i sums prod_{v in K} w(v) over the i-cliques K inside B."""
    _check_host(g, b)
    w.check_domain(b)
    weights = w.as_dict()
    return IntPolynomial(weighted_clique_counts(g, b, weights.__getitem__))


def _require_unit_constant(p: IntPolynomial, name: str):
    if p.coefficient(0) != 1:
        raise PolynomialShapeError(f"{name} must have constant term 1, got {p.coefficient(0)}")


def union_poly(p: IntPolynomial, q: IntPolynomial) -> IntPolynomial:
    """C(G ∪ H) = C(G) + C(H) - 1: the empty clique is counted once."""
    _require_unit_constant(p, "first polynomial")
    _require_unit_constant(q, "second polynomial")
    return (p + q).add_constant(-1)


def join_poly(p: IntPolynomial, q: IntPolynomial) -> IntPolynomial:
    """C(G ∨ H) = C(G) C(H)."""
    _require_unit_constant(p, "first polynomial")
    _require_unit_constant(q, "second polynomial")
    return p * q
