"""Surjective homomorphisms with a B-image constraint, and the ζ criterion against them.

``find_surjective_hom`` is an exhaustive backtracking search and serves as the
oracle: it reports FOUND, NONE (exhausted) or LIMIT (a cap was hit), and LIMIT
is never read as NONE. ``criterion`` certifies that no qualifying hom exists
when ζ_G(B_G) lies strictly below ζ_H(B_H). ``monotonicity_audit`` runs both
over a corpus and checks each instance's ζ values against the oracle.
"""
from __future__ import annotations

import json
import logging
import time
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional

from config.settings import settings
from core.clique_poly import cpoly_direct, cpoly_weighted
from core.exceptions import EmptyVertexSetError, InstanceTooLargeError, InvalidParameterError
from core.graph import Graph, VertexSet, WeightMap, blow_up, iter_bits, serialize_edge_list
from core.roots import (
    RootResult,
    root_le,
    root_lt_certified,
    root_margin,
    tolerance,
    zeta,
    zeta_of,
)
from core.spectral import BoundReport, BoundRow
from core.validator import HomMapping, verify_hom
from utils.fingerprint import graph_fingerprint, instance_fingerprint
from utils.logger import StructuredLogger

logger = logging.getLogger(__name__)


class SearchOutcome(str, Enum):
    FOUND = "found"
    NONE = "none"
    LIMIT = "limit"


@dataclass(frozen=True)
class SearchResult:
    outcome: SearchOutcome
    mapping: Optional[HomMapping] = None
    nodes: int = 0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "outcome": self.outcome.value,
            "mapping": list(self.mapping.images) if self.mapping is not None else None,
            "nodes": self.nodes,
        }


def fibers(f: HomMapping, target_n: int) -> List[VertexSet]:
    """A_x = f^-1(x) for every target vertex x, as vertex sets of the source."""
    members: List[List[int]] = [[] for _ in range(target_n)]
    for v, x in enumerate(f.images):
        members[x].append(v)
    return [VertexSet(tuple(m), len(f)) for m in members]


def fibers_independent(g: Graph, parts: Iterable[VertexSet]) -> bool:
    return all(not (g.rows[v] & part.mask) for part in parts for v in part)


# ===================== search ======================

class _LimitReached(Exception):
    pass


def find_surjective_hom(g: Graph, h: Graph, b_g: VertexSet, b_h: VertexSet,
                        max_nodes: Optional[int] = None, max_ms: Optional[int] = None,
                        max_vertices: Optional[int] = None) -> SearchResult:
    """Backtracking search for a surjective hom f: G -> H with f(B_G) = B_H.

    Vertices of G are assigned by descending degree (lowest id on ties). Each
    unassigned vertex keeps a candidate mask that is narrowed whenever one of
    its neighbours is assigned. A branch is cut when the remaining vertices
    cannot cover V(H) or B_H, by count or by the union of their candidates.
    """
    config = settings.get_search_config()
    max_nodes = config['max_nodes'] if max_nodes is None else max_nodes
    max_ms = config['max_ms'] if max_ms is None else max_ms
    max_vertices = config['max_vertices'] if max_vertices is None else max_vertices

    if b_g.host_n != g.n or b_h.host_n != h.n:
        raise InvalidParameterError("B-sets must live on their own graphs")
    if g.n > max_vertices:
        raise InstanceTooLargeError(f"source graph has {g.n} vertices, the search cap is {max_vertices}")
    if max_nodes <= 0 or max_ms <= 0:
        return SearchResult(SearchOutcome.LIMIT)
    if h.n > g.n or len(b_h) > len(b_g):
        return SearchResult(SearchOutcome.NONE)

    order = sorted(range(g.n), key=lambda v: (-g.degree(v), v))
    position = {v: i for i, v in enumerate(order)}
    in_b = [v in b_g for v in range(g.n)]
    h_all, b_target = h.all_mask, b_h.mask
    initial = [b_target if in_b[v] else h_all for v in range(g.n)]

    images = [-1] * g.n
    nodes = 0
    started = time.perf_counter()

    def feasible(depth: int, domains: List[int], covered: int, covered_b: int) -> bool:
        rest = order[depth:]
        uncovered = h_all & ~covered
        uncovered_b = b_target & ~covered_b
        rest_b = [u for u in rest if in_b[u]]
        if uncovered.bit_count() > len(rest) or uncovered_b.bit_count() > len(rest_b):
            return False
        reach = reach_b = 0
        for u in rest:
            reach |= domains[u]
            if in_b[u]:
                reach_b |= domains[u]
        return not (uncovered & ~reach) and not (uncovered_b & ~reach_b)

    def extend(depth: int, domains: List[int], covered: int, covered_b: int) -> bool:
        nonlocal nodes
        if depth == g.n:
            return covered == h_all and covered_b == b_target
        v = order[depth]
        later = [u for u in iter_bits(g.rows[v]) if position[u] > depth]
        for x in iter_bits(domains[v]):
            nodes += 1
            if nodes > max_nodes:
                raise _LimitReached
            if nodes & 1023 == 0 and (time.perf_counter() - started) * 1000.0 > max_ms:
                raise _LimitReached

            narrowed = list(domains)
            for u in later:
                narrowed[u] &= h.rows[x]
                if not narrowed[u]:
                    break
            else:
                bit = 1 << x
                next_b = covered_b | bit if in_b[v] else covered_b
                if feasible(depth + 1, narrowed, covered | bit, next_b):
                    images[v] = x
                    if extend(depth + 1, narrowed, covered | bit, next_b):
                        return True
        images[v] = -1
        return False

    try:
        found = feasible(0, initial, 0, 0) and extend(0, initial, 0, 0)
    except _LimitReached:
        logger.info(f"hom search stopped at {nodes} nodes (caps: {max_nodes} nodes, {max_ms} ms)")
        return SearchResult(SearchOutcome.LIMIT, nodes=nodes)

    if not found:
        return SearchResult(SearchOutcome.NONE, nodes=nodes)
    mapping = HomMapping.of(images)
    logger.debug(f"hom found after {nodes} nodes: {mapping.images}")
    return SearchResult(SearchOutcome.FOUND, mapping, nodes)


# ===================== criterion ======================

class Verdict(str, Enum):
    NO_HOM_CERTIFIED = "no_hom_certified"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class CriterionVerdict:
    zeta_g: RootResult
    zeta_h: RootResult
    verdict: Verdict
    margin: float  # ζ_H - ζ_G across the facing bracket ends

    def to_dict(self) -> Dict[str, Any]:
        return {
            "zeta_g": self.zeta_g.to_dict(),
            "zeta_h": self.zeta_h.to_dict(),
            "verdict": self.verdict.value,
            "margin": self.margin,
        }


def criterion(g: Graph, b_g: VertexSet, h: Graph, b_h: VertexSet,
              precision_bits: Optional[int] = None, tolerance_bits: Optional[int] = None) -> CriterionVerdict:
    """No qualifying hom G -> H exists when ζ_G(B_G) < ζ_H(B_H); otherwise inconclusive."""
    if not len(b_g) or not len(b_h):
        raise EmptyVertexSetError("the criterion needs nonempty B_G and B_H")
    config = settings.get_root_config()
    bits = config['precision_bits'] if precision_bits is None else precision_bits
    tol = tolerance(config['tolerance_bits'] if tolerance_bits is None else tolerance_bits)

    zg = zeta_of(g, b_g, bits)
    zh = zeta_of(h, b_h, bits)
    verdict = Verdict.NO_HOM_CERTIFIED if root_lt_certified(zg, zh, tol) else Verdict.INCONCLUSIVE
    return CriterionVerdict(zg, zh, verdict, root_margin(zg, zh))


# ===================== audit ======================

@dataclass(frozen=True)
class HomInstance:
    g: Graph
    b_g: VertexSet
    h: Graph
    b_h: VertexSet
    name: str = ""

    @property
    def fingerprint(self) -> str:
        return instance_fingerprint([graph_fingerprint(self.g, self.b_g), graph_fingerprint(self.h, self.b_h)])

    @property
    def label(self) -> str:
        return self.name or self.fingerprint


def _vertex_set_text(g: Graph, b: VertexSet) -> str:
    return " ".join(g.label(v) for v in b) + "\n"


def dump_counterexample(instance: HomInstance, payload: Dict[str, Any], out_dir: str,
                        structured_logger: Optional[StructuredLogger] = None) -> Path:
    """Write G/H edge lists, their B files and a JSON verdict under out_dir; returns the JSON path."""
    directory = Path(out_dir)
    directory.mkdir(parents=True, exist_ok=True)
    stem = instance.fingerprint

    for tag, graph, b in (("G", instance.g, instance.b_g), ("H", instance.h, instance.b_h)):
        (directory / f"{stem}_{tag}.edges").write_text(serialize_edge_list(graph), encoding="utf-8")
        (directory / f"{stem}_{tag}.b").write_text(_vertex_set_text(graph, b), encoding="utf-8")

    record = {
        "instance": instance.label,
        "g": {"n": instance.g.n, "edges": instance.g.edges(), "b": list(instance.b_g.members)},
        "h": {"n": instance.h.n, "edges": instance.h.edges(), "b": list(instance.b_h.members)},
        **payload,
    }
    path = directory / f"{stem}.json"
    path.write_text(json.dumps(record, indent=2, sort_keys=True) + "\n", encoding="utf-8")

    logger.warning(f"counterexample for {instance.label} written to {path}")
    if structured_logger is not None:
        structured_logger.log_counterexample(instance.label, ",".join(payload.get("failed", [])), str(path))
    return path


def _fiber_weights(f: HomMapping, b_g: VertexSet, b_h: VertexSet) -> WeightMap:
    """w_x = |A_x ∩ B_G| for x in B_H; at least 1 whenever f(B_G) = B_H."""
    counts = {x: 0 for x in b_h}
    for v in b_g:
        counts[f[v]] += 1
    return WeightMap.of(counts)


def audit_instance(instance: HomInstance, precision_bits: int, tolerance_bits: int,
                   search_limits: Dict[str, int]) -> BoundRow:
    g, b_g, h, b_h = instance.g, instance.b_g, instance.h, instance.b_h
    tol = tolerance(tolerance_bits)
    if not len(b_g) or not len(b_h):
        return BoundRow(instance.label, None, None, True, status="skipped", details={"reason": "empty B-set"})

    verdict = criterion(g, b_g, h, b_h, precision_bits, tolerance_bits)
    try:
        search = find_surjective_hom(g, h, b_g, b_h, **search_limits)
    except InstanceTooLargeError as exc:
        logger.warning(f"skipping {instance.label}: {exc}")
        return BoundRow(instance.label, verdict.zeta_h.float_value, verdict.zeta_g.float_value, True,
                        status="skipped", details={"verdict": verdict.to_dict(), "reason": str(exc)})
    details: Dict[str, Any] = {"verdict": verdict.to_dict(), "oracle": search.to_dict()}
    failed: List[str] = []

    if search.outcome is SearchOutcome.LIMIT:
        return BoundRow(instance.label, verdict.zeta_h.float_value, verdict.zeta_g.float_value, True,
                        status="skipped", details=details)

    if search.outcome is SearchOutcome.FOUND:
        if verdict.verdict is Verdict.NO_HOM_CERTIFIED:
            failed.append("criterion_unsound")
        f = search.mapping
        if not verify_hom(g, h, f, b_g, b_h).ok:
            failed.append("invalid_mapping")
        elif not fibers_independent(g, fibers(f, h.n)):
            failed.append("fiber_not_independent")
        else:
            if not root_le(verdict.zeta_h, verdict.zeta_g, tol):
                failed.append("monotonicity")
            weights = _fiber_weights(f, b_g, b_h)
            blown = blow_up(h, b_h, weights)
            blown_poly = cpoly_direct(blown.graph, blown.vertex_set)
            if cpoly_weighted(h, b_h, weights) != blown_poly:
                failed.append("blowup_identity")
            zeta_blown = zeta(blown_poly, precision_bits)
            details["zeta_blowup"] = zeta_blown.to_dict()
            if not (root_le(verdict.zeta_h, zeta_blown, tol) and root_le(zeta_blown, verdict.zeta_g, tol)):
                failed.append("chain")

    details["failed"] = failed
    status = "checked" if search.outcome is SearchOutcome.FOUND else "no_hom"
    lhs = verdict.zeta_h.float_value
    rhs = verdict.zeta_g.float_value
    slack = None if lhs is None or rhs is None else rhs - lhs
    return BoundRow(instance.label, lhs, rhs, not failed, slack, status, details)


def monotonicity_audit(instances: Iterable[HomInstance], out_dir: Optional[str] = None,
                       precision_bits: Optional[int] = None, tolerance_bits: Optional[int] = None,
                       search_limits: Optional[Dict[str, int]] = None,
                       structured_logger: Optional[StructuredLogger] = None) -> BoundReport:
    """One row per instance: ζ_H(B_H) <= ζ_G(B_G) whenever the oracle finds a hom,
    the blow-up identity and chain on that hom's fibers, and criterion soundness."""
    config = settings.get_root_config()
    bits = config['precision_bits'] if precision_bits is None else precision_bits
    tol_bits = config['tolerance_bits'] if tolerance_bits is None else tolerance_bits
    limits = dict(search_limits or {})

    rows = []
    for instance in instances:
        row = audit_instance(instance, bits, tol_bits, limits)
        rows.append(row)
        if structured_logger is not None and row.status != "skipped":
            structured_logger.log_verdict(instance.label, row.details["verdict"]["verdict"],
                                          row.details["oracle"]["outcome"], {"failed": row.details["failed"]})
        if not row.satisfied:
            logger.error(f"audit violation on {instance.label}: {row.details['failed']}")
            if out_dir is not None:
                dump_counterexample(instance, row.details, out_dir, structured_logger)

    report = BoundReport(tuple(rows))
    logger.info(f"monotonicity audit: {len(rows)} instance(s), {len(report.skipped)} skipped, "
                f"{len(report.violations)} violation(s)")
    return report
