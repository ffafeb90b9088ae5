"""Exact univariate polynomials with big-integer coefficients.

Coefficients are stored low degree first with trailing zeros stripped, so the
zero polynomial is the empty tuple. Division, gcd and square-free parts are
left to sympy over QQ; results come back as primitive integer polynomials
scaled by a positive factor, so every sign evaluation is unchanged.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from typing import Iterable, List, Sequence, Tuple, Union

import sympy as sp

from core.exceptions import InvalidParameterError

X = sp.Symbol("x")

Rational = Fraction
Number = Union[int, Fraction]


def _strip(coeffs: List) -> Tuple:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


class IntPolynomial:
    __slots__ = ('coeffs',)

    def __init__(self, coeffs: Iterable[int] = ()):
        values = list(coeffs)
        for c in values:
            if not isinstance(c, int):
                raise InvalidParameterError(f"integer coefficient expected, got {c!r}")
        self.coeffs: Tuple[int, ...] = _strip(values)

    @classmethod
    def constant(cls, c: int) -> "IntPolynomial":
        return cls([c])

    @classmethod
    def one(cls) -> "IntPolynomial":
        return cls([1])

    @classmethod
    def x(cls) -> "IntPolynomial":
        return cls([0, 1])

    @classmethod
    def from_json(cls, values: Sequence[str]) -> "IntPolynomial":
        return cls(int(v) for v in values)

    @property
    def degree(self) -> int:
        """-1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def coefficient(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __eq__(self, other) -> bool:
        if isinstance(other, IntPolynomial):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"IntPolynomial({list(self.coeffs)})"

    def __str__(self) -> str:
        return self.to_text()

    # ring operations

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        size = max(len(self.coeffs), len(other.coeffs))
        return IntPolynomial(self.coefficient(i) + other.coefficient(i) for i in range(size))

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(-c for c in self.coeffs)

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + (-other)

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        if not self.coeffs or not other.coeffs:
            return IntPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(out)

    def __pow__(self, k: int) -> "IntPolynomial":
        if k < 0:
            raise InvalidParameterError("negative exponent")
        result = IntPolynomial.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def multiply_by_x_power(self, k: int) -> "IntPolynomial":
        if k < 0:
            raise InvalidParameterError("negative shift")
        if not self.coeffs:
            return self
        return IntPolynomial((0,) * k + self.coeffs)

    def add_constant(self, c: int) -> "IntPolynomial":
        return self + IntPolynomial.constant(c)

    def scale(self, c: int) -> "IntPolynomial":
        return IntPolynomial(c * a for a in self.coeffs)

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial(i * c for i, c in enumerate(self.coeffs) if i)

    # evaluation

    def eval_rational(self, x: Number) -> Fraction:
        x = Fraction(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_float(self, x: float) -> float:
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * x + float(c)
        return acc

    def sign_at(self, x: Number) -> int:
        """sign of p(x) for rational x, computed with integers only."""
        x = Fraction(x)
        num, den = x.numerator, x.denominator
        acc = 0
        scale = 1
        # p(num/den) * den^deg = sum c_i num^i den^(deg-i), with den > 0
        for c in reversed(self.coeffs):
            acc = acc * num + c * scale
            scale *= den
        return (acc > 0) - (acc < 0)

    # content

    def content(self) -> int:
        return reduce(math.gcd, self.coeffs, 0)

    def primitive(self) -> "IntPolynomial":
        """divide by the (positive) content; the zero polynomial is returned unchanged."""
        g = self.content()
        if g <= 1:
            return self
        return IntPolynomial(c // g for c in self.coeffs)

    # rendering

    def to_text(self) -> str:
        """'c0 + c1*x + c2*x^2 + ...' with zero terms omitted."""
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            magnitude = abs(c)
            if i == 0:
                body = str(magnitude)
            else:
                power = "x" if i == 1 else f"x^{i}"
                body = power if magnitude == 1 else f"{magnitude}*{power}"
            if not parts:
                parts.append(f"-{body}" if c < 0 else body)
            else:
                parts.append(f"{'-' if c < 0 else '+'} {body}")
        return " ".join(parts)

    def to_json(self) -> List[str]:
        """coefficients as decimal strings (exact, no floats)."""
        return [str(c) for c in self.coeffs]


def add(p: IntPolynomial, q: IntPolynomial) -> IntPolynomial:
    return p + q


def subtract(p: IntPolynomial, q: IntPolynomial) -> IntPolynomial:
    return p - q


def multiply(p: IntPolynomial, q: IntPolynomial) -> IntPolynomial:
    return p * q


def multiply_by_x_power(p: IntPolynomial, k: int) -> IntPolynomial:
    return p.multiply_by_x_power(k)


def add_constant(p: IntPolynomial, c: int) -> IntPolynomial:
    return p.add_constant(c)


def eval_rational(p: IntPolynomial, x: Number) -> Fraction:
    return p.eval_rational(x)


def eval_float(p: IntPolynomial, x: float) -> float:
    return p.eval_float(x)


def derivative(p: IntPolynomial) -> IntPolynomial:
    return p.derivative()


# ===================== sympy bridge ======================

def from_rational(coeffs: Sequence[Number]) -> IntPolynomial:
    """Clear denominators and content with a positive factor; signs are preserved."""
    values = [Fraction(c) for c in coeffs]
    lcm = reduce(lambda a, b: a * b // math.gcd(a, b), (c.denominator for c in values), 1)
    return IntPolynomial(int(c * lcm) for c in values).primitive()


def to_sympy(p: IntPolynomial) -> sp.Poly:
    """p as a sympy polynomial in X over the rationals."""
    return sp.Poly.from_list(list(reversed(p.coeffs)) or [0], X, domain=sp.QQ)


def from_sympy(poly: sp.Poly) -> IntPolynomial:
    """A positive multiple of a rational sympy polynomial, primitive over the integers."""
    coeffs = [sp.Rational(c) for c in reversed(poly.all_coeffs())]
    return from_rational([Fraction(int(c.p), int(c.q)) for c in coeffs])
