"""Simple undirected graphs over dense integer ids, with bitset adjacency rows.

Row ``rows[v]`` is an int whose bit ``u`` is set iff ``uv`` is an edge. Every
structural operation returns a new value; nothing here mutates its inputs.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Tuple

import numpy as np

from core.exceptions import (
    EdgeAbsentError,
    GraphParseError,
    InvalidParameterError,
    NotACliqueError,
    SamplingExhaustedError,
    UnknownVertexError,
)

logger = logging.getLogger(__name__)

GENERATOR_KINDS = ('complete', 'empty', 'cycle', 'path', 'star', 'petersen', 'gnp', 'random_regular')


def iter_bits(mask: int) -> Iterator[int]:
    """yield the set bit positions of mask in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(ids: Iterable[int]) -> int:
    mask = 0
    for v in ids:
        mask |= 1 << v
    return mask


@dataclass(frozen=True)
class Graph:
    n: int
    rows: Tuple[int, ...]
    labels: Optional[Tuple[str, ...]] = None

    def __post_init__(self):
        if self.n < 0:
            raise InvalidParameterError(f"vertex count must be nonnegative, got {self.n}")
        if len(self.rows) != self.n:
            raise InvalidParameterError(f"expected {self.n} adjacency rows, got {len(self.rows)}")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.rows):
            if row < 0 or row & ~full:
                raise InvalidParameterError(f"row {v} references a vertex outside 0..{self.n - 1}")
            if row >> v & 1:
                raise InvalidParameterError(f"self-loop at vertex {v}")
            for u in iter_bits(row):
                if not self.rows[u] >> v & 1:
                    raise InvalidParameterError(f"adjacency is not symmetric at ({v}, {u})")
        if self.labels is not None:
            if len(self.labels) != self.n or len(set(self.labels)) != self.n:
                raise InvalidParameterError("labels must be distinct, one per vertex")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Tuple[int, int]], labels: Optional[Iterable[str]] = None) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidParameterError(f"edge ({u}, {v}) outside 0..{n - 1}")
            if u == v:
                raise InvalidParameterError(f"self-loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows), tuple(labels) if labels is not None else None)

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, (0,) * n)

    @property
    def all_mask(self) -> int:
        return (1 << self.n) - 1

    @cached_property
    def label_index(self) -> Dict[str, int]:
        return {label: i for i, label in enumerate(self.labels or ())}

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels is not None else str(v)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def neighbors(self, v: int) -> List[int]:
        return list(iter_bits(self.rows[v]))

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def degrees(self) -> Tuple[int, ...]:
        return tuple(row.bit_count() for row in self.rows)

    def edges(self) -> List[Tuple[int, int]]:
        """edges as (u, v) with u < v, lexicographically sorted."""
        out = []
        for u, row in enumerate(self.rows):
            for v in iter_bits(row >> (u + 1)):
                out.append((u, u + 1 + v))
        return out

    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.rows) // 2

    def is_clique_mask(self, mask: int) -> bool:
        for v in iter_bits(mask):
            if (mask & ~(1 << v)) & ~self.rows[v]:
                return False
        return True

    def adjacency_matrix(self) -> np.ndarray:
        matrix = np.zeros((self.n, self.n), dtype=float)
        for u, v in self.edges():
            matrix[u, v] = matrix[v, u] = 1.0
        return matrix


@dataclass(frozen=True)
class VertexSet:
    members: Tuple[int, ...]
    host_n: int

    def __post_init__(self):
        prev = -1
        for v in self.members:
            if v <= prev:
                raise InvalidParameterError("vertex set members must be sorted and distinct")
            prev = v
        if self.members and (self.members[0] < 0 or self.members[-1] >= self.host_n):
            raise InvalidParameterError(f"vertex set member outside 0..{self.host_n - 1}")

    @classmethod
    def of(cls, host_n: int, ids: Iterable[int]) -> "VertexSet":
        return cls(tuple(sorted(set(ids))), host_n)

    @classmethod
    def full(cls, n: int) -> "VertexSet":
        return cls(tuple(range(n)), n)

    @classmethod
    def empty(cls, n: int) -> "VertexSet":
        return cls((), n)

    @classmethod
    def from_mask(cls, host_n: int, mask: int) -> "VertexSet":
        return cls(tuple(iter_bits(mask)), host_n)

    @cached_property
    def mask(self) -> int:
        return mask_of(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __contains__(self, v) -> bool:
        return isinstance(v, int) and 0 <= v < self.host_n and bool(self.mask >> v & 1)

    def issubset(self, other: "VertexSet") -> bool:
        return self.mask & ~other.mask == 0

    def without(self, v: int) -> "VertexSet":
        return VertexSet(tuple(u for u in self.members if u != v), self.host_n)

    def shifted(self, offset: int, host_n: int) -> "VertexSet":
        return VertexSet(tuple(v + offset for v in self.members), host_n)


@dataclass(frozen=True)
class WeightMap:
    """Positive integer weights keyed by vertex id, stored as sorted pairs."""
    weights: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        for v, w in self.weights:
            if not isinstance(w, int) or w < 1:
                raise InvalidParameterError(f"weight of vertex {v} must be a positive integer, got {w!r}")

    @classmethod
    def of(cls, mapping: Mapping[int, int]) -> "WeightMap":
        return cls(tuple(sorted(mapping.items())))

    @classmethod
    def uniform(cls, b: VertexSet, weight: int = 1) -> "WeightMap":
        return cls(tuple((v, weight) for v in b.members))

    def as_dict(self) -> Dict[int, int]:
        return dict(self.weights)

    def get(self, v: int) -> int:
        weight = self.as_dict().get(v)
        if weight is None:
            raise InvalidParameterError(f"no weight for vertex {v}")
        return weight

    def check_domain(self, b: VertexSet):
        """the weights must be defined exactly on b."""
        keys = tuple(v for v, _ in self.weights)
        if keys != b.members:
            missing = sorted(set(b.members) - set(keys))
            extra = sorted(set(keys) - set(b.members))
            raise InvalidParameterError(f"weights must cover B exactly (missing {missing}, extra {extra})")


# ===================== text formats ======================

def _content_lines(text: str) -> Iterator[Tuple[int, str]]:
    """non-empty, non-comment lines with 1-based line numbers; BOM and CRLF tolerant."""
    if text.startswith('\ufeff'):
        text = text[1:]
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith('#'):
            continue
        yield lineno, line


def parse_edge_list(text: str) -> Graph:
    """Parse "token token" lines into a Graph; ids are dense in first-appearance order."""
    index: Dict[str, int] = {}
    labels: List[str] = []
    edges: List[Tuple[int, int]] = []

    for lineno, line in _content_lines(text):
        tokens = line.split()
        if len(tokens) != 2:
            raise GraphParseError(f"expected two vertex tokens, found {len(tokens)}", lineno)
        a, b = tokens
        if a == b:
            raise GraphParseError(f"self-loop '{a} {b}' is not allowed", lineno)
        for token in tokens:
            if token not in index:
                index[token] = len(labels)
                labels.append(token)
        edges.append((index[a], index[b]))

    graph = Graph.from_edges(len(labels), edges, labels)
    logger.debug(f"parsed edge list: n={graph.n}, m={graph.edge_count()}")
    return graph


def serialize_edge_list(g: Graph) -> str:
    """Render g as an edge list that parses back to an identical Graph.

    The identity holds for graphs whose ids follow first-appearance order (every
    parsed graph does). Isolated vertices cannot be expressed in the format.
    """
    emitted = set()
    lines: List[Tuple[int, int]] = []
    introduced = 0

    def flush(limit: int):
        for u, v in g.edges():
            if v < limit and (u, v) not in emitted:
                emitted.add((u, v))
                lines.append((u, v))

    while introduced < g.n:
        t = introduced
        below = g.rows[t] & ((1 << t) - 1)
        if below:
            j = next(iter_bits(below))
            emitted.add((j, t))
            lines.append((j, t))
            introduced = t + 1
        elif t + 1 < g.n and g.has_edge(t, t + 1):
            emitted.add((t, t + 1))
            lines.append((t, t + 1))
            introduced = t + 2
        else:
            break
        flush(introduced)
    flush(g.n)

    return "".join(f"{g.label(u)} {g.label(v)}\n" for u, v in lines)


def _resolve_token(g: Graph, token: str, lineno: int) -> int:
    if g.labels is not None:
        if token in g.label_index:
            return g.label_index[token]
        raise UnknownVertexError(token, lineno)
    try:
        v = int(token)
    except ValueError:
        raise UnknownVertexError(token, lineno) from None
    if not 0 <= v < g.n:
        raise UnknownVertexError(token, lineno)
    return v


def parse_vertex_set(text: str, g: Graph) -> VertexSet:
    """whitespace-separated vertex tokens (labels, or integer ids for label-free graphs)."""
    ids = []
    for lineno, line in _content_lines(text):
        for token in line.split():
            ids.append(_resolve_token(g, token, lineno))
    return VertexSet.of(g.n, ids)


def parse_weight_map(text: str, g: Graph) -> WeightMap:
    """"token weight" lines; weights are positive integers."""
    weights: Dict[int, int] = {}
    for lineno, line in _content_lines(text):
        tokens = line.split()
        if len(tokens) != 2:
            raise GraphParseError(f"expected 'token weight', found {len(tokens)} fields", lineno)
        v = _resolve_token(g, tokens[0], lineno)
        try:
            weight = int(tokens[1])
        except ValueError:
            raise GraphParseError(f"weight '{tokens[1]}' is not an integer", lineno) from None
        if weight < 1:
            raise GraphParseError(f"weight must be at least 1, got {weight}", lineno)
        if v in weights:
            raise GraphParseError(f"duplicate weight for '{tokens[0]}'", lineno)
        weights[v] = weight
    return WeightMap.of(weights)


# ===================== generators ======================

def _require(condition: bool, message: str):
    if not condition:
        raise InvalidParameterError(message)


def generate(kind: str, n: Optional[int] = None, d: Optional[int] = None, p: Optional[float] = None,
             seed: int = 0, max_attempts: int = 1000) -> Graph:
    """Build a named graph family. Random families are deterministic given the seed."""
    kind = kind.lower()
    if kind not in GENERATOR_KINDS:
        raise InvalidParameterError(f"unknown graph family '{kind}' (choose from {', '.join(GENERATOR_KINDS)})")

    if kind == 'petersen':
        outer = [(i, (i + 1) % 5) for i in range(5)]
        spokes = [(i, i + 5) for i in range(5)]
        inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
        return Graph.from_edges(10, outer + spokes + inner)

    _require(n is not None and n >= 0, f"{kind} needs a nonnegative n")

    if kind == 'complete':
        return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n)])
    if kind == 'empty':
        return Graph.empty(n)
    if kind == 'cycle':
        _require(n >= 3, "cycle needs n >= 3")
        return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])
    if kind == 'path':
        _require(n >= 1, "path needs n >= 1")
        return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])
    if kind == 'star':
        # K_{1,n}: centre 0 and n leaves
        return Graph.from_edges(n + 1, [(0, i) for i in range(1, n + 1)])
    if kind == 'gnp':
        _require(p is not None and 0.0 <= p <= 1.0, "gnp needs a probability 0 <= p <= 1")
        rng = np.random.default_rng(seed)
        edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
        return Graph.from_edges(n, edges)

    # random_regular
    _require(d is not None and 0 <= d < max(n, 1), "random_regular needs 0 <= d < n")
    _require(n * d % 2 == 0, "random_regular needs n*d even")
    return _pairing_model(n, d, seed, max_attempts)


def _pairing_model(n: int, d: int, seed: int, max_attempts: int) -> Graph:
    rng = np.random.default_rng(seed)
    points = np.repeat(np.arange(n), d)
    for attempt in range(1, max_attempts + 1):
        pairs = rng.permutation(points).reshape(-1, 2)
        seen = set()
        for a, b in pairs.tolist():
            if a == b:
                break
            key = (a, b) if a < b else (b, a)
            if key in seen:
                break
            seen.add(key)
        else:
            logger.debug(f"random_regular(n={n}, d={d}) accepted after {attempt} attempt(s)")
            return Graph.from_edges(n, sorted(seen))
    raise SamplingExhaustedError(f"random_regular(n={n}, d={d}) rejected {max_attempts} pairings")


# ===================== structural operations ======================

def _check_vertex(g: Graph, v: int):
    if not 0 <= v < g.n:
        raise InvalidParameterError(f"vertex {v} outside 0..{g.n - 1}")


def _check_host(g: Graph, s: VertexSet):
    if s.host_n != g.n:
        raise InvalidParameterError(f"vertex set belongs to a host with {s.host_n} vertices, graph has {g.n}")


def delete_vertex(g: Graph, v: int) -> Tuple[Graph, Tuple[int, ...]]:
    """G - v. Returns the graph and remap[old] = new id (-1 for v itself)."""
    _check_vertex(g, v)
    low = (1 << v) - 1
    rows = tuple((row & low) | ((row >> (v + 1)) << v) for i, row in enumerate(g.rows) if i != v)
    labels = None if g.labels is None else g.labels[:v] + g.labels[v + 1:]
    remap = tuple(-1 if i == v else (i if i < v else i - 1) for i in range(g.n))
    return Graph(g.n - 1, rows, labels), remap


def delete_edge(g: Graph, u: int, v: int) -> Graph:
    """G - uv on the same vertex set."""
    _check_vertex(g, u)
    _check_vertex(g, v)
    if not g.has_edge(u, v):
        raise EdgeAbsentError(f"({u}, {v}) is not an edge")
    rows = list(g.rows)
    rows[u] &= ~(1 << v)
    rows[v] &= ~(1 << u)
    return Graph(g.n, tuple(rows), g.labels)


def induced_subgraph(g: Graph, s: VertexSet) -> Tuple[Graph, Tuple[int, ...]]:
    """G[s] densely reindexed; the second value maps new id -> old id."""
    _check_host(g, s)
    position = {old: new for new, old in enumerate(s.members)}
    rows = []
    for old in s.members:
        row = 0
        for nb in iter_bits(g.rows[old] & s.mask):
            row |= 1 << position[nb]
        rows.append(row)
    labels = None if g.labels is None else tuple(g.labels[v] for v in s.members)
    return Graph(len(s), tuple(rows), labels), s.members


def complement(g: Graph) -> Graph:
    full = g.all_mask
    return Graph(g.n, tuple(full & ~row & ~(1 << v) for v, row in enumerate(g.rows)), g.labels)


def _combined_labels(g: Graph, h: Graph) -> Optional[Tuple[str, ...]]:
    if g.labels is None or h.labels is None or set(g.labels) & set(h.labels):
        return None
    return g.labels + h.labels


def disjoint_union(g: Graph, h: Graph) -> Graph:
    """h's ids are offset by g.n."""
    rows = g.rows + tuple(row << g.n for row in h.rows)
    return Graph(g.n + h.n, rows, _combined_labels(g, h))


def join(g: Graph, h: Graph) -> Graph:
    """disjoint union plus every edge between the two sides."""
    g_side = g.all_mask
    h_side = h.all_mask << g.n
    rows = tuple(row | h_side for row in g.rows) + tuple((row << g.n) | g_side for row in h.rows)
    return Graph(g.n + h.n, rows, _combined_labels(g, h))


def union_vertex_set(b_g: VertexSet, b_h: VertexSet) -> VertexSet:
    """B_G and B_H placed on the host produced by disjoint_union/join."""
    host_n = b_g.host_n + b_h.host_n
    return VertexSet(b_g.members + tuple(v + b_g.host_n for v in b_h.members), host_n)


@dataclass(frozen=True)
class BlowUp:
    graph: Graph
    vertex_set: VertexSet
    clusters: Tuple[Tuple[int, ...], ...]  # clusters[v] = new ids of the copies of v


def blow_up(g: Graph, b: VertexSet, w: WeightMap) -> BlowUp:
    """Replace each v in b by an independent cluster of w(v) copies.

    Copies of u and v are adjacent iff uv is an edge of g, so edges inside b
    become complete bipartite graphs and copies inherit edges leaving b.
    """
    _check_host(g, b)
    w.check_domain(b)
    weights = w.as_dict()

    clusters = []
    next_id = 0
    for v in range(g.n):
        size = weights.get(v, 1)
        clusters.append(tuple(range(next_id, next_id + size)))
        next_id += size

    rows = [0] * next_id
    for u, v in g.edges():
        v_mask = mask_of(clusters[v])
        u_mask = mask_of(clusters[u])
        for a in clusters[u]:
            rows[a] |= v_mask
        for c in clusters[v]:
            rows[c] |= u_mask

    labels = None
    if g.labels is not None:
        labels = []
        for v, copies in enumerate(clusters):
            if len(copies) == 1:
                labels.append(g.labels[v])
            else:
                labels.extend(f"{g.labels[v]}#{k}" for k in range(len(copies)))
        if len(set(labels)) != len(labels):
            labels = None

    graph = Graph(next_id, tuple(rows), tuple(labels) if labels is not None else None)
    vertex_set = VertexSet.of(next_id, (c for v in b.members for c in clusters[v]))
    return BlowUp(graph, vertex_set, tuple(clusters))


def n_b_of_vertex(g: Graph, b: VertexSet, v: int) -> VertexSet:
    """N_B(v) = N(v) ∩ B."""
    _check_host(g, b)
    _check_vertex(g, v)
    return VertexSet.from_mask(g.n, g.rows[v] & b.mask)


def n_b_of_clique(g: Graph, b: VertexSet, k: VertexSet) -> VertexSet:
    """N_B(K): vertices of B adjacent to every vertex of the clique K (B itself for K = ∅)."""
    _check_host(g, b)
    _check_host(g, k)
    if not g.is_clique_mask(k.mask):
        raise NotACliqueError(f"{list(k.members)} is not a clique")
    mask = b.mask
    for v in k:
        mask &= g.rows[v]
    return VertexSet.from_mask(g.n, mask)
