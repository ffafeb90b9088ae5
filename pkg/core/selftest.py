"""Invariant suites run end to end by ``main.py selftest``.

Each suite is a module-level function of (scale parameters, seed) returning a
SuiteResult, so suites can be shipped to worker processes. The JSON summary
leaves wall times out; equal seeds give byte-identical summaries.
"""
from __future__ import annotations

import asyncio
import logging
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional

import numpy as np

from core.clique_poly import (
    METHODS,
    cpoly_direct,
    cpoly_weighted,
    join_poly,
    union_poly,
    vertex_recurrence_terms,
)
from core.cliques import alpha_b, enumerate_cliques, omega_b
from core.corpus import (
    all_graphs,
    all_subsets,
    blowup_triples,
    gnp_samples,
    hom_corpus,
    planted_instances,
    random_b_instances,
    random_pairs,
    regular_samples,
)
from core.graph import (
    VertexSet,
    blow_up,
    complement,
    delete_edge,
    disjoint_union,
    generate,
    induced_subgraph,
    join,
    parse_edge_list,
    parse_vertex_set,
    union_vertex_set,
)
from core.homomorphism import SearchOutcome, Verdict, criterion, find_surjective_hom, monotonicity_audit
from core.roots import RootKind, in_root_interval, root_le, tolerance, zeta, zeta_of
from core.spectral import clique_bound_report, eigenvalues, eml_check, spectral_profile, tanner_bound
from utils.fingerprint import summary_digest
from utils.logger import StructuredLogger

logger = logging.getLogger(__name__)

SCALES: Dict[str, Dict[str, int]] = {
    'examples': {},
    'small': {
        'corpus_n': 4, 'gnp_count': 30, 'gnp_n': 8, 'pair_count': 40, 'pair_n': 5,
        'eml_samples': 100, 'hom_g': 4, 'hom_h': 3, 'hom_random': 40,
    },
    'full': {
        'corpus_n': 5, 'gnp_count': 300, 'gnp_n': 12, 'pair_count': 200, 'pair_n': 6,
        'eml_samples': 500, 'hom_g': 5, 'hom_h': 4, 'hom_random': 200,
    },
}

# long spelling accepted on the command line
SCALE_ALIASES: Dict[str, str] = {'paper-examples': 'examples'}

WORKED_EXAMPLE_EDGES = "a b\nb c\na c\n"
WORKED_EXAMPLE_B = "a b\n"
MAX_MESSAGES = 5


@dataclass
class SuiteResult:
    name: str
    cases: int = 0
    failures: int = 0
    messages: List[str] = field(default_factory=list)
    elapsed_ms: float = 0.0

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def check(self, condition: bool, message: Callable[[], str]):
        """count one case; keep the first few failure messages."""
        self.cases += 1
        if not condition:
            self.failures += 1
            if len(self.messages) < MAX_MESSAGES:
                self.messages.append(message())

    def to_dict(self) -> Dict[str, Any]:
        return {"name": self.name, "cases": self.cases, "failures": self.failures,
                "passed": self.passed, "messages": self.messages}


@dataclass
class SelftestSummary:
    scale: str
    seed: int
    suites: List[SuiteResult]

    @property
    def passed(self) -> bool:
        return all(s.passed for s in self.suites)

    def to_dict(self) -> Dict[str, Any]:
        payload = {
            "scale": self.scale,
            "seed": self.seed,
            "passed": self.passed,
            "suites": [s.to_dict() for s in self.suites],
        }
        payload["digest"] = summary_digest(payload)
        return payload

    def to_text(self) -> str:
        width = max((len(s.name) for s in self.suites), default=0)
        lines = [f"selftest scale={self.scale} seed={self.seed}"]
        for s in self.suites:
            status = "ok" if s.passed else "FAIL"
            lines.append(f"  {s.name.ljust(width)}  {s.cases:>7} cases  {s.failures:>4} failures  "
                         f"{s.elapsed_ms / 1000.0:8.2f} s  {status}")
            lines.extend(f"      {m}" for m in s.messages)
        total = sum(s.elapsed_ms for s in self.suites) / 1000.0
        lines.append(f"{'PASSED' if self.passed else 'FAILED'} in {total:.2f} s")
        return "\n".join(lines)


# ===================== suites ======================

def suite_worked_example(params: Dict[str, int], seed: int) -> SuiteResult:
    result = SuiteResult("worked_example")
    g = parse_edge_list(WORKED_EXAMPLE_EDGES)
    b = parse_vertex_set(WORKED_EXAMPLE_B, g)
    for method, builder in METHODS.items():
        text = builder(g, b).to_text()
        result.check(text == "1 + 2*x + x^2", lambda: f"{method}: got '{text}'")
    first, second = vertex_recurrence_terms(g, b, g.label_index['a'])
    decomposition = f"({first.to_text()}) + ({second.to_text()})"
    result.check(decomposition == "(1 + x) + (x + x^2)", lambda: f"decomposition: got '{decomposition}'")
    root = zeta_of(g, b)
    result.check(root.kind is RootKind.EXACT and root.exact == -1 and root.multiplicity == 2,
                 lambda: f"zeta: got {root.to_dict()}")
    return result


def suite_recurrences(params: Dict[str, int], seed: int) -> SuiteResult:
    result = SuiteResult("recurrences")
    n = params['corpus_n']
    subsets = list(all_subsets(n))
    for g in all_graphs(n):
        co = complement(g)
        for b in subsets:
            direct = cpoly_direct(g, b)
            for method in ('vertex', 'edge'):
                other = METHODS[method](g, b)
                result.check(other == direct, lambda: f"{method} {other} != direct {direct} on {g.edges()} B={b.members}")
            result.check(alpha_b(g, b) == omega_b(co, b), lambda: f"alpha/omega mismatch on {g.edges()} B={b.members}")
            result.check(len(enumerate_cliques(g, b, 1 << n)) == sum(direct.coeffs),
                         lambda: f"enumeration count mismatch on {g.edges()} B={b.members}")
    return result


def suite_root_interval(params: Dict[str, int], seed: int) -> SuiteResult:
    result = SuiteResult("root_interval")
    tol = tolerance()
    n = params['corpus_n']
    cases = [(g, b) for g in all_graphs(n) for b in all_subsets(n)]
    cases += gnp_samples(params['gnp_count'], params['gnp_n'], seed)
    for g, b in cases:
        root = zeta_of(g, b)
        if not len(b):
            result.check(not root.has_root, lambda: "empty B must give -inf")
        else:
            result.check(in_root_interval(root, tol), lambda: f"zeta {root.to_dict()} outside [-1, 0) for B={b.members}")
    return result


def suite_monotonicity(params: Dict[str, int], seed: int) -> SuiteResult:
    """ζ weakly increases when a vertex leaves B or an edge inside B is deleted."""
    result = SuiteResult("monotonicity")
    tol = tolerance()
    n = params['corpus_n']
    for g in all_graphs(n):
        for b in all_subsets(n):
            if not len(b):
                continue
            z = zeta_of(g, b)
            for v in b:
                smaller = zeta_of(g, b.without(v))
                result.check(root_le(smaller, z, tol), lambda: f"B-subset: removing {v} from {b.members} raised zeta")
            for u, v in g.edges():
                if u in b and v in b:
                    thinner = zeta_of(delete_edge(g, u, v), b)
                    result.check(root_le(z, thinner, tol), lambda: f"spanning: deleting ({u},{v}) lowered zeta")
    return result


def suite_induced_monotonicity(params: Dict[str, int], seed: int) -> SuiteResult:
    """For B ⊆ S, the polynomial of B in G[S] equals the one in G, so the roots coincide."""
    result = SuiteResult("induced_monotonicity")
    n = params['corpus_n']
    for g in all_graphs(n):
        for s in all_subsets(n):
            h, members = induced_subgraph(g, s)
            for b in (s, s.without(s.members[0]) if len(s) else s):
                b_h = VertexSet.of(h.n, (i for i, old in enumerate(members) if old in b))
                p_g, p_h = cpoly_direct(g, b), cpoly_direct(h, b_h)
                result.check(p_g == p_h and zeta(p_g) == zeta(p_h),
                             lambda: f"G[S] changed C_B for S={s.members} B={b.members}")
    return result


def suite_identities(params: Dict[str, int], seed: int) -> SuiteResult:
    result = SuiteResult("identities")
    for g, b_g, h, b_h in random_pairs(params['pair_count'], params['pair_n'], seed):
        b = union_vertex_set(b_g, b_h)
        p, q = cpoly_direct(g, b_g), cpoly_direct(h, b_h)
        result.check(cpoly_direct(disjoint_union(g, h), b) == union_poly(p, q), lambda: "disjoint union identity")
        result.check(cpoly_direct(join(g, h), b) == join_poly(p, q), lambda: "join identity")
    for g, b, w in blowup_triples(params['pair_count'], params['pair_n'], seed + 1):
        blown = blow_up(g, b, w)
        result.check(cpoly_weighted(g, b, w) == cpoly_direct(blown.graph, blown.vertex_set),
                     lambda: f"blow-up identity on {g.edges()} B={b.members} w={w.weights}")
    return result


def suite_spectral_fixtures(params: Dict[str, int], seed: int) -> SuiteResult:
    result = SuiteResult("spectral_fixtures")
    petersen = generate('petersen')
    expected = [3.0] + [1.0] * 5 + [-2.0] * 4
    values = eigenvalues(petersen)
    result.check(all(abs(a - b) < 1e-8 for a, b in zip(values, expected)), lambda: f"petersen spectrum {values}")
    for n in range(3, 9):
        lam = spectral_profile(generate('complete', n)).lam
        result.check(abs(lam - 1.0) < 1e-8, lambda: f"lambda(K_{n}) = {lam}")
    for n in range(3, 11):
        cycle = generate('cycle', n)
        values = eigenvalues(cycle)
        closed = sorted((2 * math.cos(2 * math.pi * k / n) for k in range(n)), reverse=True)
        result.check(all(abs(a - b) < 1e-8 for a, b in zip(values, closed)), lambda: f"C_{n} spectrum {values}")
        result.check(abs(sum(values)) < 1e-8 * n and abs(sum(v * v for v in values) - 2 * n) < 1e-6 * n,
                     lambda: f"C_{n} trace identities")
    for g, exact in ((petersen, (-10 + math.sqrt(40)) / 30), (generate('cycle', 5), (-5 + math.sqrt(5)) / 10)):
        root = zeta_of(g, VertexSet.full(g.n))
        result.check(root.has_root and abs(root.float_value - exact) < 1e-12,
                     lambda: f"zeta {root.float_value} vs {exact}")
    return result


def _random_subset(rng: np.random.Generator, n: int) -> VertexSet:
    return VertexSet.from_mask(n, int(rng.integers(0, 1 << n)))


def suite_eml_tanner(params: Dict[str, int], seed: int) -> SuiteResult:
    result = SuiteResult("eml_tanner")
    rng = np.random.default_rng(seed)
    petersen = generate('petersen')
    graphs = [petersen] + regular_samples(2, 12, 4, seed)
    for g in graphs:
        profile = spectral_profile(g)
        for _ in range(params['eml_samples']):
            x, y = _random_subset(rng, g.n), _random_subset(rng, g.n)
            row = eml_check(g, x, y, profile)
            result.check(row.satisfied, lambda: f"EML violated: {row.to_dict()}")
    profile = spectral_profile(petersen)
    for mask in range(1, 1 << petersen.n):
        row = tanner_bound(petersen, VertexSet.from_mask(petersen.n, mask), profile)
        result.check(row.satisfied, lambda: f"Tanner violated for S={mask:#x}: {row.details}")
    for n in range(2, 9):
        k_n = generate('complete', n)
        profile = spectral_profile(k_n)
        for mask in range(1, 1 << n):
            row = tanner_bound(k_n, VertexSet.from_mask(n, mask), profile)
            result.check(row.satisfied, lambda: f"Tanner violated on K_{n} for S={mask:#x}: {row.details}")
    return result


def suite_clique_bounds(params: Dict[str, int], seed: int) -> SuiteResult:
    result = SuiteResult("clique_bounds")
    family = [generate('complete', n) for n in range(4, 9)]
    family.append(generate('petersen'))
    family.extend(generate('cycle', n) for n in range(4, 11))
    for g in family:
        report = clique_bound_report(g, VertexSet.full(g.n))
        result.check(report.satisfied, lambda: f"violated rows {[r.identifier for r in report.violations]} on n={g.n}")
    return result


def suite_homomorphism(params: Dict[str, int], seed: int, out_dir: Optional[str] = None) -> SuiteResult:
    result = SuiteResult("homomorphism")
    k3, c5 = generate('complete', 3), generate('cycle', 5)
    full3, full5 = VertexSet.full(3), VertexSet.full(5)

    forward = criterion(k3, full3, c5, full5)
    result.check(forward.verdict is Verdict.NO_HOM_CERTIFIED, lambda: "K_3 -> C_5 not certified")
    result.check(find_surjective_hom(k3, c5, full3, full5).outcome is SearchOutcome.NONE,
                 lambda: "K_3 -> C_5 search did not exhaust")
    backward = criterion(c5, full5, k3, full3)
    result.check(backward.verdict is Verdict.INCONCLUSIVE, lambda: "C_5 -> K_3 wrongly certified")
    result.check(find_surjective_hom(c5, k3, full5, full3).outcome is SearchOutcome.FOUND,
                 lambda: "C_5 -> K_3 hom not found")

    instances = hom_corpus(params['hom_g'], params['hom_h'])
    half = params['hom_random'] // 2
    instances += planted_instances(half, params['hom_g'] + 1, params['hom_h'], seed)
    instances += random_b_instances(params['hom_random'] - half, params['hom_g'], params['hom_h'], seed + 1)
    report = monotonicity_audit(instances, out_dir=out_dir)
    for row in report.rows:
        result.check(row.satisfied, lambda: f"{row.identifier}: {row.details.get('failed')}")
    return result


SUITES: Dict[str, Callable[..., SuiteResult]] = {
    'worked_example': suite_worked_example,
    'recurrences': suite_recurrences,
    'root_interval': suite_root_interval,
    'monotonicity': suite_monotonicity,
    'induced_monotonicity': suite_induced_monotonicity,
    'identities': suite_identities,
    'spectral_fixtures': suite_spectral_fixtures,
    'eml_tanner': suite_eml_tanner,
    'clique_bounds': suite_clique_bounds,
    'homomorphism': suite_homomorphism,
}


def resolve_scale(scale: str) -> str:
    scale = SCALE_ALIASES.get(scale, scale)
    if scale not in SCALES:
        raise ValueError(f"unknown scale '{scale}'")
    return scale


def suites_for(scale: str) -> List[str]:
    return ['worked_example'] if resolve_scale(scale) == 'examples' else list(SUITES)


def run_suite(name: str, scale: str, seed: int, out_dir: Optional[str] = None) -> SuiteResult:
    params = SCALES[resolve_scale(scale)]
    started = time.perf_counter()
    if name == 'homomorphism':
        result = suite_homomorphism(params, seed, out_dir)
    else:
        result = SUITES[name](params, seed)
    result.elapsed_ms = (time.perf_counter() - started) * 1000.0
    logger.info(f"suite {name}: {result.cases} cases, {result.failures} failures, {result.elapsed_ms:.0f} ms")
    return result


async def _run_parallel(names: List[str], scale: str, seed: int, workers: int,
                        out_dir: Optional[str]) -> List[SuiteResult]:
    loop = asyncio.get_running_loop()
    with ProcessPoolExecutor(max_workers=workers) as pool:
        tasks = [loop.run_in_executor(pool, run_suite, name, scale, seed, out_dir) for name in names]
        return list(await asyncio.gather(*tasks))


def run_selftest(scale: str = 'small', seed: int = 0, workers: int = 1, out_dir: Optional[str] = None,
                 structured_logger: Optional[StructuredLogger] = None) -> SelftestSummary:
    scale = resolve_scale(scale)
    names = suites_for(scale)
    if workers > 1 and len(names) > 1:
        results = asyncio.run(_run_parallel(names, scale, seed, workers, out_dir))
    else:
        results = [run_suite(name, scale, seed, out_dir) for name in names]

    if structured_logger is not None:
        for r in results:
            structured_logger.log_suite_result(r.name, r.cases, r.failures, r.elapsed_ms)
    return SelftestSummary(scale, seed, results)
