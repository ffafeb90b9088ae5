"""Cliques contained in a vertex subset B: counts, enumeration, omega and alpha."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from config.settings import settings
from core.exceptions import CliqueCapExceededError, InvalidParameterError
from core.graph import Graph, VertexSet, iter_bits

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CliqueCountVector:
    """counts[i] = number of i-cliques inside B; counts[0] = 1 for the empty clique."""
    counts: Tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.counts) - 1

    @property
    def total(self) -> int:
        return sum(self.counts)

    def __getitem__(self, i: int) -> int:
        return self.counts[i] if 0 <= i < len(self.counts) else 0


def _check_host(g: Graph, b: VertexSet):
    if b.host_n != g.n:
        raise InvalidParameterError(f"vertex set belongs to a host with {b.host_n} vertices, graph has {g.n}")


def degeneracy_order(g: Graph, mask: int) -> List[int]:
    """Repeatedly remove a minimum-degree vertex of G[mask] (lowest id on ties)."""
    remaining = mask
    degree = {v: (g.rows[v] & mask).bit_count() for v in iter_bits(mask)}
    order = []
    while remaining:
        v = min(iter_bits(remaining), key=lambda u: (degree[u], u))
        order.append(v)
        remaining &= ~(1 << v)
        for u in iter_bits(g.rows[v] & remaining):
            degree[u] -= 1
    return order


def _forward_masks(g: Graph, order: Sequence[int]) -> Dict[int, int]:
    """neighbours of v that come after v in the ordering."""
    forward = {}
    later = 0
    for v in reversed(order):
        forward[v] = g.rows[v] & later
        later |= 1 << v
    return forward


def weighted_clique_counts(g: Graph, b: VertexSet, weight: Optional[Callable[[int], int]] = None) -> List[int]:
    """Entry i sums, over the i-cliques K inside b, the product of weight(v) for v in K.

    With no weight function every clique counts 1. A clique is charged to its
    first vertex in the degeneracy order of G[b], so the cliques inside a
    candidate mask C are the empty one plus u + (cliques inside C ∩ forward(u))
    for u in C. The count vector depends on C alone and is memoised on it.
    """
    _check_host(g, b)
    order = degeneracy_order(g, b.mask)
    forward = _forward_masks(g, order)
    w = weight or (lambda v: 1)
    memo: Dict[int, List[int]] = {}

    def extend(candidates: int) -> List[int]:
        if candidates in memo:
            return memo[candidates]
        counts = [1]
        for u in iter_bits(candidates):
            wu = w(u)
            for i, c in enumerate(extend(candidates & forward[u]), start=1):
                if len(counts) <= i:
                    counts.append(0)
                counts[i] += wu * c
        memo[candidates] = counts
        return counts

    counts = list(extend(b.mask))
    logger.debug(f"clique counts: {len(memo)} candidate masks memoised")
    return counts


def clique_counts(g: Graph, b: VertexSet) -> CliqueCountVector:
    counts = CliqueCountVector(tuple(weighted_clique_counts(g, b)))
    logger.debug(f"clique counts for |B|={len(b)}: {counts.counts}")
    return counts


def enumerate_cliques(g: Graph, b: VertexSet, cap: Optional[int] = None) -> List[VertexSet]:
    """All cliques inside b, including the empty one, ordered by size then lexicographically.

    Raises CliqueCapExceededError once more than cap cliques turn up (default settings.ENUM_CAP).
    """
    _check_host(g, b)
    cap = settings.ENUM_CAP if cap is None else cap
    if cap < 1:
        raise InvalidParameterError("cap must be a positive integer")
    found: List[Tuple[int, ...]] = [()]

    def grow(clique: Tuple[int, ...], candidates: int):
        for u in iter_bits(candidates):
            bigger = clique + (u,)
            found.append(bigger)
            if len(found) > cap:
                raise CliqueCapExceededError(cap)
            above = ~((1 << (u + 1)) - 1)
            grow(bigger, candidates & g.rows[u] & above)

    grow((), b.mask)
    found.sort(key=lambda c: (len(c), c))
    return [VertexSet(c, g.n) for c in found]


def omega_b(g: Graph, b: VertexSet) -> int:
    """ω(G[B]); 0 for empty B."""
    return clique_counts(g, b).degree


def _color_sort(candidates: int, rows: Sequence[int]) -> Tuple[List[int], List[int]]:
    """Greedy colouring of the candidate set; returns vertices by colour and their colour numbers."""
    order, colors = [], []
    uncolored = candidates
    color = 0
    while uncolored:
        color += 1
        available = uncolored
        while available:
            low = available & -available
            v = low.bit_length() - 1
            available &= ~low & ~rows[v]
            uncolored &= ~low
            order.append(v)
            colors.append(color)
    return order, colors


def max_clique_size(rows: Sequence[int], mask: int) -> int:
    """Exact maximum clique of the graph given by rows, restricted to mask (branch and bound)."""
    best = 0

    def expand(size: int, candidates: int):
        nonlocal best
        order, colors = _color_sort(candidates, rows)
        for v, color in zip(reversed(order), reversed(colors)):
            if size + color <= best:
                return
            narrowed = candidates & rows[v]
            if narrowed:
                expand(size + 1, narrowed)
            elif size + 1 > best:
                best = size + 1
            candidates &= ~(1 << v)

    if mask:
        expand(0, mask)
    return best


def alpha_b(g: Graph, b: VertexSet) -> int:
    """α_B(G): largest independent set inside B, as a maximum clique of the complement of G[B]."""
    _check_host(g, b)
    mask = b.mask
    complement_rows = [(mask & ~row & ~(1 << v)) if mask >> v & 1 else 0 for v, row in enumerate(g.rows)]
    return max_clique_size(complement_rows, mask)
