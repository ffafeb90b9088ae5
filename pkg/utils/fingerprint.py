import hashlib, json, logging
from typing import Any, Dict, Iterable, Optional

logger = logging.getLogger(__name__)


def _digest(key_string: str) -> str:
    return hashlib.sha256(key_string.encode('utf-8')).hexdigest()


def graph_fingerprint(graph, vertex_set=None) -> str:
    """Fingerprint of a labelled graph (and optionally a B-set on it).
    Two graphs share a fingerprint iff they have the same n and adjacency rows."""
    key_parts = [str(graph.n)]
    key_parts.extend(format(row, 'x') for row in graph.rows)
    if vertex_set is not None:
        key_parts.append("B=" + ",".join(str(v) for v in vertex_set.members))

    key_string = ":".join(key_parts)
    fingerprint = _digest(key_string)
    logger.debug(f"Generated fingerprint: {fingerprint[:16]}... from {key_string[:100]}")
    return fingerprint


def instance_fingerprint(parts: Iterable[str], length: int = 16) -> str:
    """short stable name for a composite instance (used for dump file stems)."""
    return _digest("|".join(parts))[:length]


def summary_digest(payload: Dict[str, Any], exclude: Optional[Iterable[str]] = None) -> str:
    """sha256 over the canonical JSON form of a summary, minus volatile keys."""
    drop = set(exclude or ())
    canonical = {k: v for k, v in payload.items() if k not in drop}
    return _digest(json.dumps(canonical, sort_keys=True, separators=(',', ':')))
