"""Command-line entry point.

    python main.py poly     --graph G.edges [--b B.txt] [--weights W.txt] [--method direct|vertex|edge]
    python main.py zeta     --graph G.edges [--b B.txt] [--precision 60]
    python main.py spectral --graph G.edges
    python main.py bounds   --graph G.edges [--b B.txt]
    python main.py hom      --graph G.edges --graph2 H.edges [--b B_G.txt] [--b2 B_H.txt]
    python main.py selftest [--scale examples|paper-examples|small|full] [--workers N]
    python main.py generate --kind petersen|complete|... [--n N] [--d D] [--p P]

Results go to stdout, diagnostics to stderr. Exit codes: 0 ok, 1 selftest
failure, 2 input error, 3 regularity precondition, 4 resource limit.
"""
import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, List, Optional

from config.settings import settings
from core.clique_poly import METHODS, build_cpoly, cpoly_weighted
from core.exceptions import CliqueRootError, InputError, InvalidParameterError
from core.graph import (
    GENERATOR_KINDS,
    Graph,
    VertexSet,
    generate,
    parse_edge_list,
    parse_vertex_set,
    parse_weight_map,
    serialize_edge_list,
)
from core.homomorphism import (
    HomInstance,
    SearchOutcome,
    Verdict,
    criterion,
    dump_counterexample,
    find_surjective_hom,
)
from core.roots import zeta
from core.selftest import SCALE_ALIASES, SCALES, run_selftest
from core.spectral import clique_bound_report, spectral_profile
from core.validator import verify_hom
from utils.logger import get_logger, get_structured_logger

logger = logging.getLogger('main')

LOGGER_NAMES = ('main', 'core', 'utils')


def _read_text(path: str, what: str) -> str:
    try:
        return Path(path).read_text(encoding='utf-8')
    except OSError as e:
        raise InputError(f"cannot read {what} file '{path}': {e.strerror or e}") from None


def _load_graph(path: str) -> Graph:
    return parse_edge_list(_read_text(path, "graph"))


def _load_vertex_set(path: Optional[str], g: Graph) -> VertexSet:
    if path is None:
        return VertexSet.full(g.n)
    return parse_vertex_set(_read_text(path, "vertex set"), g)


def _precision(args) -> int:
    if not 20 <= args.precision <= 200:
        raise InvalidParameterError(f"--precision must lie in 20..200, got {args.precision}")
    return args.precision


def _emit(args, payload: Any, text: str):
    if args.format == 'json':
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


# ===================== commands ======================

def cmd_poly(args) -> int:
    g = _load_graph(args.graph)
    b = _load_vertex_set(args.b, g)
    if args.weights:
        w = parse_weight_map(_read_text(args.weights, "weights"), g)
        p = cpoly_weighted(g, b, w)
        method = 'weighted'
    else:
        p = build_cpoly(g, b, args.method)
        method = args.method
    _emit(args, {"method": method, "coefficients": p.to_json(), "text": p.to_text()}, p.to_text())
    return 0


def cmd_zeta(args) -> int:
    g = _load_graph(args.graph)
    b = _load_vertex_set(args.b, g)
    p = build_cpoly(g, b)
    root = zeta(p, _precision(args))
    _emit(args, {"polynomial": p.to_json(), **root.to_dict()}, root.to_text())
    return 0


def cmd_spectral(args) -> int:
    profile = spectral_profile(_load_graph(args.graph))
    _emit(args, profile.to_dict(), profile.to_text())
    return 0


def cmd_bounds(args) -> int:
    g = _load_graph(args.graph)
    b = _load_vertex_set(args.b, g)
    report = clique_bound_report(g, b)
    _emit(args, report.to_dict(), report.to_text())
    return 0


def cmd_hom(args) -> int:
    if not args.graph2:
        raise InvalidParameterError("hom needs --graph2")
    g, h = _load_graph(args.graph), _load_graph(args.graph2)
    b_g, b_h = _load_vertex_set(args.b, g), _load_vertex_set(args.b2, h)

    verdict = criterion(g, b_g, h, b_h, _precision(args))
    search = find_surjective_hom(g, h, b_g, b_h, max_nodes=args.cap_nodes, max_ms=args.cap_ms)
    payload = {"criterion": verdict.to_dict(), "oracle": search.to_dict()}
    if search.mapping is not None:
        payload["verification"] = verify_hom(g, h, search.mapping, b_g, b_h).to_dict()

    structured = get_structured_logger(settings.STRUCTURED_LOG_FILE)
    instance = HomInstance(g, b_g, h, b_h)
    structured.log_verdict(instance.label, verdict.verdict.value, search.outcome.value, {"nodes": search.nodes})
    if search.outcome is SearchOutcome.FOUND and verdict.verdict is Verdict.NO_HOM_CERTIFIED:
        logger.error("criterion certified no hom but the search found one")
        if args.out_dir:
            dump_counterexample(instance, {**payload, "failed": ["criterion_unsound"]}, args.out_dir, structured)

    text = (f"criterion: {verdict.verdict.value} (margin {verdict.margin:.12g})\n"
            f"oracle: {search.outcome.value} after {search.nodes} nodes")
    if search.mapping is not None:
        text += "\nmapping: " + " ".join(f"{g.label(v)}->{h.label(x)}" for v, x in enumerate(search.mapping.images))
    _emit(args, payload, text)

    if search.outcome is SearchOutcome.LIMIT:
        logger.error("search stopped at a node or time cap; no certificate either way")
        return 4
    return 0


def cmd_selftest(args) -> int:
    workers = args.workers if args.workers is not None else settings.SELFTEST_WORKERS
    structured = get_structured_logger(settings.STRUCTURED_LOG_FILE)
    summary = run_selftest(args.scale, args.seed, workers, args.out_dir, structured)
    _emit(args, summary.to_dict(), summary.to_text())
    return 0 if summary.passed else 1


def cmd_generate(args) -> int:
    g = generate(args.kind, args.n, args.d, args.p, seed=args.seed, max_attempts=settings.REGULAR_MAX_ATTEMPTS)
    isolated = [v for v in range(g.n) if not g.rows[v]]
    if isolated:
        logger.warning(f"{len(isolated)} isolated vertex(es) cannot be written as an edge list and are dropped")
    sys.stdout.write(serialize_edge_list(g))
    return 0


COMMANDS = {
    'poly': cmd_poly,
    'zeta': cmd_zeta,
    'spectral': cmd_spectral,
    'bounds': cmd_bounds,
    'hom': cmd_hom,
    'selftest': cmd_selftest,
    'generate': cmd_generate,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='cliqueroot', description="B-restricted clique polynomials and their roots")
    parser.add_argument('--log-level', default=settings.LOG_LEVEL,
                        choices=['DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL'], type=str.upper)
    sub = parser.add_subparsers(dest='command', required=True)

    def common(p: argparse.ArgumentParser, graph: bool = True):
        if graph:
            p.add_argument('--graph', required=True, help="edge-list file")
            p.add_argument('--b', help="vertex-set file (default: every vertex)")
        p.add_argument('--format', choices=['text', 'json'], default='text')
        p.add_argument('--precision', type=int, default=settings.PRECISION_BITS,
                       help="bracket width exponent k (width 2^-k)")

    p = sub.add_parser('poly', help="print C_B(G;x)")
    common(p)
    p.add_argument('--weights', help="'vertex weight' file for the weighted polynomial")
    p.add_argument('--method', choices=list(METHODS), default='direct')

    common(sub.add_parser('zeta', help="largest negative root of C_B(G;x)"))
    common(sub.add_parser('spectral', help="(n,d,lambda) profile of a regular graph"))
    common(sub.add_parser('bounds', help="spectral bound report for c_i(B)"))

    p = sub.add_parser('hom', help="no-homomorphism criterion plus exhaustive search")
    common(p)
    p.add_argument('--graph2', help="target graph H")
    p.add_argument('--b2', help="B_H file (default: every vertex of H)")
    p.add_argument('--cap-nodes', type=int, default=settings.HOM_NODE_CAP)
    p.add_argument('--cap-ms', type=int, default=settings.HOM_TIME_CAP_MS)
    p.add_argument('--out-dir', help="directory for counterexample dumps")

    p = sub.add_parser('selftest', help="run the invariant suites")
    common(p, graph=False)
    p.add_argument('--scale', choices=list(SCALES) + list(SCALE_ALIASES), default='small')
    p.add_argument('--seed', type=int, default=settings.SEED)
    p.add_argument('--workers', type=int)
    p.add_argument('--out-dir', help="directory for counterexample dumps")

    p = sub.add_parser('generate', help="write a named graph family as an edge list")
    p.add_argument('--kind', required=True, choices=list(GENERATOR_KINDS))
    p.add_argument('--n', type=int)
    p.add_argument('--d', type=int)
    p.add_argument('--p', type=float)
    p.add_argument('--seed', type=int, default=settings.SEED)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    settings.ensure_log_directory()

    for name in LOGGER_NAMES:
        get_logger(name, settings.LOG_FILE, args.log_level)

    try:
        return COMMANDS[args.command](args)
    except CliqueRootError as e:
        logger.debug(f"{type(e).__name__}: {e}")
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())
