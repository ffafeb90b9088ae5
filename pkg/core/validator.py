from dataclasses import dataclass, field
from typing import Any, Dict, List, Sequence, Tuple
import logging

from core.graph import Graph, VertexSet

logger = logging.getLogger(__name__)

VIOLATION_KINDS = ('totality', 'vertex_set', 'edge', 'surjectivity', 'b_image')


@dataclass(frozen=True)
class HomMapping:
    """images[v] = f(v) for every vertex v of the source graph."""
    images: Tuple[int, ...]

    @classmethod
    def of(cls, images: Sequence[int]) -> "HomMapping":
        return cls(tuple(int(x) for x in images))

    def __len__(self) -> int:
        return len(self.images)

    def __getitem__(self, v: int) -> int:
        return self.images[v]

    def image_of(self, s: VertexSet) -> frozenset:
        return frozenset(self.images[v] for v in s)


@dataclass(frozen=True)
class Violation:
    kind: str
    detail: str


@dataclass
class VerificationResult:
    ok: bool = True
    violations: List[Violation] = field(default_factory=list)

    def add(self, kind: str, detail: str):
        self.ok = False
        self.violations.append(Violation(kind, detail))

    def kinds(self) -> List[str]:
        return sorted({v.kind for v in self.violations})

    def to_dict(self) -> Dict[str, Any]:
        return {"ok": self.ok, "violations": [{"kind": v.kind, "detail": v.detail} for v in self.violations]}


class HomValidator:
    """layered checks for a candidate surjective homomorphism with a B-image constraint"""

    def _check_totality(self, g: Graph, h: Graph, f: HomMapping, result: VerificationResult) -> bool:
        if len(f) != g.n:
            result.add('totality', f"mapping has {len(f)} entries, source has {g.n} vertices")
            return False
        outside = [v for v, x in enumerate(f.images) if not 0 <= x < h.n]
        if outside:
            result.add('totality', f"vertices {outside} map outside 0..{h.n - 1}")
            return False
        return True

    def _check_hosts(self, g: Graph, h: Graph, b_g: VertexSet, b_h: VertexSet, result: VerificationResult) -> bool:
        ok = True
        if b_g.host_n != g.n:
            result.add('vertex_set', f"B_G lives on {b_g.host_n} vertices, source has {g.n}")
            ok = False
        if b_h.host_n != h.n:
            result.add('vertex_set', f"B_H lives on {b_h.host_n} vertices, target has {h.n}")
            ok = False
        return ok

    def _check_edges(self, g: Graph, h: Graph, f: HomMapping, result: VerificationResult):
        for u, v in g.edges():
            x, y = f[u], f[v]
            if not h.has_edge(x, y):
                what = "a single vertex" if x == y else "a non-edge"
                result.add('edge', f"edge ({g.label(u)}, {g.label(v)}) maps to {what} ({h.label(x)}, {h.label(y)})")

    def _check_surjective(self, h: Graph, f: HomMapping, result: VerificationResult):
        missed = sorted(set(range(h.n)) - set(f.images))
        if missed:
            result.add('surjectivity', f"target vertices {[h.label(x) for x in missed]} are never hit")

    def _check_b_image(self, h: Graph, f: HomMapping, b_g: VertexSet, b_h: VertexSet, result: VerificationResult):
        image = f.image_of(b_g)
        target = frozenset(b_h.members)
        if image - target:
            result.add('b_image', f"f(B_G) leaves B_H at {[h.label(x) for x in sorted(image - target)]}")
        if target - image:
            result.add('b_image', f"f(B_G) misses {[h.label(x) for x in sorted(target - image)]}")

    def validate(self, g: Graph, h: Graph, f: HomMapping, b_g: VertexSet, b_h: VertexSet) -> VerificationResult:
        """
        Run every check and collect violations:
        totality first (later checks index through f), then edge preservation,
        surjectivity onto V(H) and the exact image condition f(B_G) = B_H.
        """
        result = VerificationResult()

        # 1) f must be a total map into V(H)
        if not self._check_totality(g, h, f, result):
            return result

        # 2) edges go to edges
        self._check_edges(g, h, f, result)

        # 3) every target vertex is hit
        self._check_surjective(h, f, result)

        # 4) f(B_G) = B_H
        if self._check_hosts(g, h, b_g, b_h, result):
            self._check_b_image(h, f, b_g, b_h, result)

        if not result.ok:
            logger.debug(f"mapping rejected: {result.kinds()}")
        return result

    def explain(self, g: Graph, h: Graph, f: HomMapping, b_g: VertexSet, b_h: VertexSet) -> str:
        """human-readable verdict."""
        result = self.validate(g, h, f, b_g, b_h)
        if result.ok:
            return "PASS: surjective homomorphism with f(B_G) = B_H"
        lines = ["FAIL:"]
        lines.extend(f"  [{v.kind}] {v.detail}" for v in result.violations)
        return "\n".join(lines)


_validator = HomValidator()


def verify_hom(g: Graph, h: Graph, f: HomMapping, b_g: VertexSet, b_h: VertexSet) -> VerificationResult:
    return _validator.validate(g, h, f, b_g, b_h)
