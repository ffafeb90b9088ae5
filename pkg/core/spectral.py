"""Adjacency spectra and the (n,d,λ) certificates.

Eigenvalues come from a cyclic Jacobi sweep over a private numpy copy of the
adjacency matrix. Everything built on them (the mixing lemma, Tanner's
neighbourhood bound, the clique-coefficient bound) is reported row by row in
a BoundReport; a failed row is a result, not an exception.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from config.settings import settings
from core.cliques import clique_counts
from core.exceptions import (
    EigenvalueConvergenceError,
    EmptyVertexSetError,
    InvalidParameterError,
    NotRegularError,
    PreconditionError,
)
from core.graph import Graph, VertexSet

logger = logging.getLogger(__name__)

Number = Union[int, Fraction, float]


# ===================== eigenvalues ======================

def _off_diagonal_norm(a: np.ndarray) -> float:
    return float(np.linalg.norm(a - np.diag(np.diag(a))))


def jacobi_eigenvalues(matrix: np.ndarray, max_sweeps: int = 100) -> List[float]:
    """Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations, descending."""
    a = np.array(matrix, dtype=float, copy=True)
    n = a.shape[0]
    if n == 0:
        raise InvalidParameterError("eigenvalues need at least one vertex")
    threshold = 1e-12 * n

    for sweep in range(max_sweeps + 1):
        off = _off_diagonal_norm(a)
        if off < threshold:
            logger.debug(f"jacobi converged after {sweep} sweep(s), off-diagonal norm {off:.3e}")
            return sorted(np.diag(a).tolist(), reverse=True)
        if sweep == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c

                col_p, col_q = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p, row_q = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                a[p, q] = a[q, p] = 0.0

    raise EigenvalueConvergenceError(
        f"jacobi did not converge in {max_sweeps} sweeps (off-diagonal norm {_off_diagonal_norm(a):.3e})")


def eigenvalues(g: Graph, max_sweeps: Optional[int] = None) -> List[float]:
    if g.n == 0:
        raise InvalidParameterError("eigenvalues need at least one vertex")
    sweeps = settings.JACOBI_MAX_SWEEPS if max_sweeps is None else max_sweeps
    return jacobi_eigenvalues(g.adjacency_matrix(), sweeps)


def regular_degree(g: Graph) -> Optional[int]:
    """the common degree, or None if g is not regular."""
    degrees = set(g.degrees())
    return degrees.pop() if len(degrees) == 1 else None


@dataclass(frozen=True)
class SpectralProfile:
    n: int
    d: int
    lam: float
    eigenvalues: Tuple[float, ...]

    def to_dict(self) -> Dict[str, Any]:
        return {"n": self.n, "d": self.d, "lambda": self.lam, "eigenvalues": list(self.eigenvalues)}

    def to_text(self) -> str:
        spectrum = ", ".join(f"{v:.10g}" for v in self.eigenvalues)
        return f"n: {self.n}\nd: {self.d}\nlambda: {self.lam:.12g}\neigenvalues: [{spectrum}]"


def spectral_profile(g: Graph, max_sweeps: Optional[int] = None) -> SpectralProfile:
    """(n, d, λ) of a regular graph, λ = max |λ_i| over the non-principal eigenvalues."""
    if g.n == 0:
        raise InvalidParameterError("the (n,d,lambda) profile needs at least one vertex")
    d = regular_degree(g)
    if d is None:
        raise NotRegularError(g.degrees())
    values = eigenvalues(g, max_sweeps)
    lam = max((abs(v) for v in values[1:]), default=0.0)
    return SpectralProfile(g.n, d, lam, tuple(values))


# ===================== bound reports ======================

def _render(value: Optional[Number]):
    if value is None or isinstance(value, float):
        return value
    return str(value)


@dataclass(frozen=True)
class BoundRow:
    identifier: str
    lhs: Optional[Number]
    rhs: Optional[float]
    satisfied: bool
    slack: Optional[float] = None
    status: str = "checked"
    details: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "identifier": self.identifier,
            "lhs": _render(self.lhs),
            "rhs": self.rhs,
            "satisfied": self.satisfied,
            "slack": self.slack,
            "status": self.status,
            "details": self.details,
        }


@dataclass(frozen=True)
class BoundReport:
    rows: Tuple[BoundRow, ...] = ()

    @property
    def satisfied(self) -> bool:
        return all(row.satisfied for row in self.rows)

    @property
    def violations(self) -> List[BoundRow]:
        return [row for row in self.rows if not row.satisfied]

    @property
    def skipped(self) -> List[BoundRow]:
        return [row for row in self.rows if row.status == "skipped"]

    def to_dict(self) -> Dict[str, Any]:
        return {"satisfied": self.satisfied, "skipped": len(self.skipped),
                "rows": [row.to_dict() for row in self.rows]}

    def to_text(self) -> str:
        if not self.rows:
            return "(no rows)"
        header = ("identifier", "lhs", "rhs", "slack", "status", "ok")
        table = [header] + [
            (row.identifier,
             "-" if row.lhs is None else str(row.lhs),
             "-" if row.rhs is None else f"{row.rhs:.12g}",
             "-" if row.slack is None else f"{row.slack:.6g}",
             row.status,
             "yes" if row.satisfied else "NO")
            for row in self.rows
        ]
        widths = [max(len(line[i]) for line in table) for i in range(len(header))]
        return "\n".join("  ".join(cell.ljust(w) for cell, w in zip(line, widths)).rstrip() for line in table)


def _le_row(identifier: str, lhs: Number, rhs: float, **details) -> BoundRow:
    """row for lhs <= rhs with relative tolerance 1e-9 * max(1, |rhs|)."""
    ok = float(lhs) <= rhs + 1e-9 * max(1.0, abs(rhs))
    return BoundRow(identifier, lhs, rhs, ok, rhs - float(lhs), details=details)


# ===================== mixing lemma ======================

def edge_count_between(g: Graph, x: VertexSet, y: VertexSet, ordered: bool = True) -> int:
    """e(X,Y).

    ordered=True counts pairs (u, v) in X x Y with uv an edge, so an edge inside
    X ∩ Y counts twice. ordered=False counts each edge with one end in X and the
    other in Y once.
    """
    for s in (x, y):
        if s.host_n != g.n:
            raise InvalidParameterError("vertex set does not belong to this graph")
    pairs = sum((g.rows[u] & y.mask).bit_count() for u in x)
    if ordered:
        return pairs
    common = x.mask & y.mask
    inside = sum((g.rows[u] & common).bit_count() for u in x if common >> u & 1) // 2
    return pairs - inside


def _profile_for(g: Graph, profile: Optional[SpectralProfile]) -> SpectralProfile:
    return profile if profile is not None else spectral_profile(g)


def eml_check(g: Graph, x: VertexSet, y: VertexSet, profile: Optional[SpectralProfile] = None) -> BoundRow:
    """|e(X,Y) - d|X||Y|/n| <= λ sqrt(|X||Y|), with ordered-pair e(X,Y)."""
    p = _profile_for(g, profile)
    e = edge_count_between(g, x, y, ordered=True)
    size = len(x) * len(y)
    deviation = abs(Fraction(e) - Fraction(p.d * size, p.n))
    return _le_row("eml", deviation, p.lam * math.sqrt(size),
                   e=e, x=len(x), y=len(y))


# ===================== Tanner ======================

def neighbourhood(g: Graph, s: VertexSet, closed: bool = False) -> VertexSet:
    mask = 0
    for v in s:
        mask |= g.rows[v]
    if closed:
        mask |= s.mask
    return VertexSet.from_mask(g.n, mask)


def tanner_bound(g: Graph, s: VertexSet, profile: Optional[SpectralProfile] = None) -> BoundRow:
    """|N(S)| >= n (1 - (λ²/d²)(1 - b)/b), b = |S|/n, under the open or closed N(S)."""
    if not len(s):
        raise EmptyVertexSetError("Tanner's bound needs a nonempty S")
    p = _profile_for(g, profile)
    if p.d == 0:
        raise PreconditionError("Tanner's bound needs d >= 1")

    b = len(s) / p.n
    bound = p.n * (1.0 - (p.lam ** 2 / p.d ** 2) * ((1.0 - b) / b))
    open_size = len(neighbourhood(g, s))
    closed_size = len(neighbourhood(g, s, closed=True))
    tol = 1e-9 * p.n

    if open_size >= bound - tol:
        convention, actual = "open", open_size
    elif closed_size >= bound - tol:
        convention, actual = "closed", closed_size
    else:
        convention, actual = "none", closed_size

    return BoundRow("tanner", bound, float(actual), convention != "none", actual - bound,
                    details={"open": open_size, "closed": closed_size, "convention": convention,
                             "vacuous": bound <= 0})


# ===================== clique-coefficient bound ======================

def clique_bound_report(g: Graph, b: VertexSet, profile: Optional[SpectralProfile] = None) -> BoundReport:
    """c_i(B) <= (m/i!)(dθ_B)^(i-1) for i = 2..ω(G[B]), θ_B = m/n + λ/d, plus the two premise rows."""
    if b.host_n != g.n:
        raise InvalidParameterError("vertex set does not belong to this graph")
    p = _profile_for(g, profile)
    m = len(b)
    if m == 0:
        return BoundReport()

    d_theta = p.d * m / p.n + p.lam
    counts = clique_counts(g, b)
    rows = [
        _le_row(f"c_{i}", counts[i], (m / math.factorial(i)) * d_theta ** (i - 1))
        for i in range(2, counts.degree + 1)
    ]

    widest = max((g.rows[v] & b.mask).bit_count() for v in b)
    rows.append(_le_row("premise_dtheta", widest, d_theta))
    rows.append(_le_row("premise_eml", widest, p.d * m / p.n + p.lam * math.sqrt(m)))
    return BoundReport(tuple(rows))


def eml_report(g: Graph, pairs: Sequence[Tuple[VertexSet, VertexSet]],
               profile: Optional[SpectralProfile] = None) -> BoundReport:
    p = _profile_for(g, profile)
    return BoundReport(tuple(eml_check(g, x, y, p) for x, y in pairs))
