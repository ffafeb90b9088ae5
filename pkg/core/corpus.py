"""Exhaustive and seeded instance corpora for the invariant suites."""
from __future__ import annotations

import itertools
import logging
from functools import lru_cache
from typing import Iterator, List, Tuple

import numpy as np

from core.graph import Graph, VertexSet, WeightMap, generate
from core.homomorphism import HomInstance

logger = logging.getLogger(__name__)


def vertex_pairs(n: int) -> List[Tuple[int, int]]:
    return [(u, v) for u in range(n) for v in range(u + 1, n)]


def all_graphs(n: int) -> Iterator[Graph]:
    """Every labelled graph on n vertices; bit i of the index selects the i-th pair in lexicographic order."""
    pairs = vertex_pairs(n)
    for code in range(1 << len(pairs)):
        yield Graph.from_edges(n, (pairs[i] for i in range(len(pairs)) if code >> i & 1))


def all_subsets(n: int) -> Iterator[VertexSet]:
    for mask in range(1 << n):
        yield VertexSet.from_mask(n, mask)


def canonical_rows(g: Graph) -> Tuple[int, ...]:
    """lexicographically least adjacency rows over all relabellings (small n only)."""
    best = None
    for perm in itertools.permutations(range(g.n)):
        rows = [0] * g.n
        for v, row in enumerate(g.rows):
            image = 0
            for u in range(g.n):
                if row >> u & 1:
                    image |= 1 << perm[u]
            rows[perm[v]] = image
        candidate = tuple(rows)
        if best is None or candidate < best:
            best = candidate
    return best if best is not None else ()


@lru_cache(maxsize=None)
def graphs_up_to_isomorphism(n: int) -> Tuple[Graph, ...]:
    """one representative per isomorphism class, in order of first appearance in all_graphs(n)."""
    seen = {}
    for g in all_graphs(n):
        key = canonical_rows(g)
        if key not in seen:
            seen[key] = g
    logger.debug(f"{len(seen)} isomorphism classes on {n} vertices")
    return tuple(seen.values())


def _random_mask(rng: np.random.Generator, n: int, nonempty: bool = True, proper: bool = False) -> int:
    """uniform mask on n vertices; proper leaves out the full mask once n > 1."""
    if not n:
        return 0
    high = (1 << n) - 1 if proper and n > 1 else 1 << n
    return int(rng.integers(1 if nonempty else 0, high))


def gnp_samples(count: int, n: int, seed: int) -> List[Tuple[Graph, VertexSet]]:
    """seeded G(n, p) graphs with p uniform in [0.1, 0.9] and a random nonempty B."""
    rng = np.random.default_rng(seed)
    samples = []
    for _ in range(count):
        p = float(rng.uniform(0.1, 0.9))
        g = generate('gnp', n, p=p, seed=int(rng.integers(1 << 31)))
        samples.append((g, VertexSet.from_mask(n, _random_mask(rng, n))))
    return samples


def _random_graph(rng: np.random.Generator, n: int) -> Graph:
    return generate('gnp', n, p=float(rng.uniform(0.2, 0.8)), seed=int(rng.integers(1 << 31)))


def random_pairs(count: int, max_n: int, seed: int) -> List[Tuple[Graph, VertexSet, Graph, VertexSet]]:
    """(G, B_G, H, B_H) with 1..max_n vertices each and arbitrary (possibly empty) B-sets."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        n_g, n_h = int(rng.integers(1, max_n + 1)), int(rng.integers(1, max_n + 1))
        g, h = _random_graph(rng, n_g), _random_graph(rng, n_h)
        out.append((g, VertexSet.from_mask(n_g, _random_mask(rng, n_g, False)),
                    h, VertexSet.from_mask(n_h, _random_mask(rng, n_h, False))))
    return out


def blowup_triples(count: int, max_n: int, seed: int, max_weight: int = 3) -> List[Tuple[Graph, VertexSet, WeightMap]]:
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        n = int(rng.integers(1, max_n + 1))
        g = _random_graph(rng, n)
        b = VertexSet.from_mask(n, _random_mask(rng, n, False))
        w = WeightMap.of({v: int(rng.integers(1, max_weight + 1)) for v in b})
        out.append((g, b, w))
    return out


def regular_samples(count: int, n: int, d: int, seed: int) -> List[Graph]:
    rng = np.random.default_rng(seed)
    return [generate('random_regular', n, d=d, seed=int(rng.integers(1 << 31))) for _ in range(count)]


# ===================== homomorphism corpora ======================

def hom_corpus(max_g: int, max_h: int) -> List[HomInstance]:
    """every pair of isomorphism classes with |V(H)| <= |V(G)|, B = V on both sides."""
    instances = []
    for n_g in range(1, max_g + 1):
        for g in graphs_up_to_isomorphism(n_g):
            for n_h in range(1, min(max_h, n_g) + 1):
                for h in graphs_up_to_isomorphism(n_h):
                    instances.append(HomInstance(g, VertexSet.full(n_g), h, VertexSet.full(n_h)))
    return instances


def planted_instances(count: int, max_g: int, max_h: int, seed: int) -> List[HomInstance]:
    """Instances with a hom by construction: a random surjection f, edges of G only
    between vertices whose images are adjacent, and B_H = f(B_G)."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        n_h = int(rng.integers(1, max_h + 1))
        n_g = int(rng.integers(n_h, max_g + 1))
        h = _random_graph(rng, n_h)
        images = list(range(n_h)) + [int(x) for x in rng.integers(0, n_h, size=n_g - n_h)]
        images = [int(x) for x in rng.permutation(images)]
        keep = float(rng.uniform(0.5, 1.0))
        edges = [(u, v) for u, v in vertex_pairs(n_g)
                 if h.has_edge(images[u], images[v]) and rng.random() < keep]
        g = Graph.from_edges(n_g, edges)
        b_g = VertexSet.from_mask(n_g, _random_mask(rng, n_g, proper=True))
        b_h = VertexSet.of(n_h, (images[v] for v in b_g))
        out.append(HomInstance(g, b_g, h, b_h))
    return out


def random_b_instances(count: int, max_g: int, max_h: int, seed: int) -> List[HomInstance]:
    """isomorphism-class pairs with random nonempty B-sets; mostly no qualifying hom."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        n_g = int(rng.integers(1, max_g + 1))
        n_h = int(rng.integers(1, min(max_h, n_g) + 1))
        classes_g, classes_h = graphs_up_to_isomorphism(n_g), graphs_up_to_isomorphism(n_h)
        g = classes_g[int(rng.integers(len(classes_g)))]
        h = classes_h[int(rng.integers(len(classes_h)))]
        out.append(HomInstance(g, VertexSet.from_mask(n_g, _random_mask(rng, n_g, proper=True)),
                               h, VertexSet.from_mask(n_h, _random_mask(rng, n_h, proper=True))))
    return out
