"""Exact isolation of the largest negative root ζ of a clique polynomial.

The polynomial is reduced to its square-free part, a Sturm chain is built over
the rationals with sympy, and the bracket [-M, 0) given by the Cauchy bound M is bisected,
always keeping the rightmost half that still holds a root. All arithmetic is
exact; the float carried in a RootResult is for display only.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

from core.clique_poly import cpoly_direct
from core.exceptions import InvalidParameterError, PolynomialShapeError
from core.graph import Graph, VertexSet
from core.polynomial import X, IntPolynomial, from_sympy, to_sympy

logger = logging.getLogger(__name__)

DEFAULT_PRECISION_BITS = 60
DEFAULT_TOLERANCE_BITS = 50


class RootKind(str, Enum):
    NO_NEGATIVE_ROOT = "no_negative_root"
    EXACT = "exact"
    BRACKET = "bracket"


@dataclass(frozen=True)
class RootResult:
    kind: RootKind
    lo: Optional[Fraction] = None
    hi: Optional[Fraction] = None
    exact: Optional[Fraction] = None
    float_value: Optional[float] = None
    multiplicity: Optional[int] = None

    @property
    def has_root(self) -> bool:
        return self.kind is not RootKind.NO_NEGATIVE_ROOT

    @property
    def lower(self) -> Fraction:
        return self.exact if self.kind is RootKind.EXACT else self.lo

    @property
    def upper(self) -> Fraction:
        return self.exact if self.kind is RootKind.EXACT else self.hi

    def to_dict(self) -> dict:
        def text(value: Optional[Fraction]) -> Optional[str]:
            return None if value is None else str(value)

        return {
            "kind": self.kind.value,
            "lo": text(self.lo),
            "hi": text(self.hi),
            "exact": text(self.exact),
            "float": self.float_value,
            "multiplicity": self.multiplicity,
        }

    def to_text(self) -> str:
        if self.kind is RootKind.NO_NEGATIVE_ROOT:
            return "kind: no_negative_root (zeta = -inf)"
        if self.kind is RootKind.EXACT:
            return (f"kind: exact\nvalue: {self.exact}\nfloat: {self.float_value!r}\n"
                    f"multiplicity: {self.multiplicity}")
        return (f"kind: bracket\nlo: {self.lo}\nhi: {self.hi}\n"
                f"float: {self.float_value!r}")


NO_NEGATIVE_ROOT = RootResult(RootKind.NO_NEGATIVE_ROOT)


def tolerance(bits: int = DEFAULT_TOLERANCE_BITS) -> Fraction:
    return Fraction(1, 1 << bits)


# ===================== Sturm machinery ======================

def square_free_part(p: IntPolynomial) -> IntPolynomial:
    """p / gcd(p, p'), primitive with a positive leading coefficient."""
    if p.is_zero():
        raise InvalidParameterError("the zero polynomial has no square-free part")
    result = from_sympy(to_sympy(p).sqf_part())
    return -result if result.leading < 0 else result


def sturm_chain(p: IntPolynomial) -> List[IntPolynomial]:
    """p, p', then negated remainders over QQ, each positively rescaled to primitive integers."""
    chain = [to_sympy(p)]
    d = chain[0].diff(X)
    if not d.is_zero:
        chain.append(d)
        while True:
            r = chain[-2].rem(chain[-1])
            if r.is_zero:
                break
            chain.append(-r)
    return [p] + [from_sympy(q) for q in chain[1:]]


def sign_variations(chain: Sequence[IntPolynomial], x: Fraction) -> int:
    signs = [s for s in (poly.sign_at(x) for poly in chain) if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _count(chain: Sequence[IntPolynomial], lo: Fraction, hi: Fraction) -> int:
    return sign_variations(chain, lo) - sign_variations(chain, hi)


def sturm_count(p: IntPolynomial, lo, hi) -> int:
    """Number of distinct real roots of the square-free p in (lo, hi]."""
    lo, hi = Fraction(lo), Fraction(hi)
    if not lo < hi:
        raise InvalidParameterError(f"need lo < hi, got ({lo}, {hi}]")
    return _count(sturm_chain(p), lo, hi)


# ===================== ζ ======================

def _check_clique_shape(p: IntPolynomial):
    if p.is_zero() or p.coefficient(0) != 1 or any(c < 0 for c in p.coeffs):
        raise PolynomialShapeError(
            f"expected constant term 1 and nonnegative coefficients, got {p.to_text()}")


def _multiplicity(p: IntPolynomial, r: Fraction) -> int:
    m = 0
    d = p
    while not d.is_zero() and d.sign_at(r) == 0:
        m += 1
        d = d.derivative()
    return m


def _exact(p: IntPolynomial, r: Fraction) -> RootResult:
    return RootResult(RootKind.EXACT, exact=r, float_value=float(r), multiplicity=_multiplicity(p, r))


def cauchy_bound(p: IntPolynomial) -> Fraction:
    """1 + max |c_i| / |c_deg|; every root has modulus below it."""
    return 1 + Fraction(max(abs(c) for c in p.coeffs[:-1]), abs(p.leading))


def zeta(p: IntPolynomial, precision_bits: int = DEFAULT_PRECISION_BITS) -> RootResult:
    """Largest negative root of a clique-shaped polynomial, or NO_NEGATIVE_ROOT."""
    _check_clique_shape(p)
    if not 20 <= precision_bits <= 200:
        raise InvalidParameterError(f"precision must lie in 20..200 bits, got {precision_bits}")
    if p.degree == 0:
        return NO_NEGATIVE_ROOT
    return _zeta_cached(p.coeffs, precision_bits)


@lru_cache(maxsize=16384)
def _zeta_cached(coeffs: Tuple[int, ...], precision_bits: int) -> RootResult:
    p = IntPolynomial(coeffs)
    q = square_free_part(p)
    chain = sturm_chain(q)

    lo, hi = -cauchy_bound(p), Fraction(0)
    if _count(chain, lo, hi) == 0:
        return NO_NEGATIVE_ROOT

    # invariant: the rightmost negative root lies in (lo, hi] and hi is not a root
    width = Fraction(1, 1 << precision_bits)
    while hi - lo > width:
        mid = (lo + hi) / 2
        if _count(chain, mid, hi) > 0:
            lo = mid
        elif q.sign_at(mid) == 0:
            return _exact(p, mid)
        else:
            hi = mid

    # a rational root r = a/b of q has b dividing its leading coefficient
    candidate = ((lo + hi) / 2).limit_denominator(abs(q.leading))
    if lo < candidate <= hi and q.sign_at(candidate) == 0 and _count(chain, candidate, hi) == 0:
        return _exact(p, candidate)

    logger.debug(f"zeta of {p.to_text()} bracketed in ({float(lo)}, {float(hi)}]")
    return RootResult(RootKind.BRACKET, lo=lo, hi=hi, float_value=float((lo + hi) / 2))


def zeta_of(g: Graph, b: VertexSet, precision_bits: int = DEFAULT_PRECISION_BITS) -> RootResult:
    """ζ_G(B), the canonical entry point."""
    return zeta(cpoly_direct(g, b), precision_bits)


# ===================== comparisons ======================

def root_le(a: RootResult, b: RootResult, tol: Fraction) -> bool:
    """False only when a is certainly above b + tol; -inf sits below everything."""
    if not a.has_root:
        return True
    if not b.has_root:
        return False
    return a.lower <= b.upper + tol


def root_lt_certified(a: RootResult, b: RootResult, tol: Fraction) -> bool:
    """a lies strictly below b with a separation exceeding tol."""
    if not b.has_root:
        return False
    if not a.has_root:
        return True
    return a.upper + tol < b.lower


def in_root_interval(r: RootResult, tol: Fraction) -> bool:
    """the bracket (or exact value) lies inside [-1 - tol, 0)."""
    return r.has_root and r.lower >= -1 - tol and r.upper < 0


def root_margin(a: RootResult, b: RootResult) -> float:
    """b - a as a float, using the facing ends of the brackets; inf when a = -inf."""
    if not a.has_root:
        return float('inf') if b.has_root else 0.0
    if not b.has_root:
        return float('-inf')
    return float(b.lower - a.upper)
