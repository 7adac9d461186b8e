"""Exact univariate polynomials in x over Q and Lagrange interpolation."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence


class OverdeterminedMismatch(ValueError):
    pass


class DuplicateAbscissa(ValueError):
    pass


def _frac(v) -> Fraction:
    return v if isinstance(v, Fraction) else Fraction(v)


class RationalPoly:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        c = [_frac(v) for v in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(c)

    @classmethod
    def parse(cls, text: str) -> "RationalPoly":
        """Coefficients as whitespace separated fractions, lowest degree first."""
        return cls(Fraction(t) for t in text.split())

    @classmethod
    def constant(cls, c) -> "RationalPoly":
        return cls([c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: "RationalPoly") -> "RationalPoly":
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return RationalPoly((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
                            for i in range(n))

    def __neg__(self):
        return RationalPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, RationalPoly):
            return RationalPoly(c * _frac(other) for c in self.coeffs)
        out = [Fraction(0)] * max(len(self.coeffs) + len(other.coeffs) - 1, 0)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return RationalPoly(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, RationalPoly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"RationalPoly({self})"

    def encode(self) -> str:
        return " ".join(str(c) for c in self.coeffs) if self.coeffs else "0"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            if mono and a == 1:
                body = mono
            elif mono:
                body = f"{a}*{mono}" if a.denominator != 1 else f"{a}{mono}"
            else:
                body = str(a)
            parts.append((sign, body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s


def interpolate(samples: Sequence[tuple], degree_bound: int) -> RationalPoly:
    """Lagrange interpolant of degree <= degree_bound through the samples.

    Extra samples beyond degree_bound + 1 are used as consistency checks.
    """
    pts = [(_frac(x), _frac(y)) for x, y in samples]
    xs = [x for x, _ in pts]
    if len(set(xs)) != len(xs):
        raise DuplicateAbscissa(f"repeated abscissa in {xs}")
    need = degree_bound + 1
    if len(pts) < need:
        raise ValueError(f"need {need} samples, got {len(pts)}")
    base = pts[:need]
    result = RationalPoly()
    for i, (xi, yi) in enumerate(base):
        term = RationalPoly([yi])
        for j, (xj, _) in enumerate(base):
            if j != i:
                term = term * RationalPoly([-xj / (xi - xj), 1 / (xi - xj)])
        result = result + term
    for x, y in pts[need:]:
        if result(x) != y:
            raise OverdeterminedMismatch(f"sample ({x}, {y}) disagrees with fit {result}")
    return result
