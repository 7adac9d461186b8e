"""Generic degrees c * q^a * prod phi_n(q)^e_n and their 2-adic valuations."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction


class UnsupportedIndex(ValueError):
    pass


@dataclass(frozen=True, order=True)
class LinearForm:
    """a*l + b."""
    a: int
    b: int

    @classmethod
    def parse(cls, text: str) -> "LinearForm":
        t = text.replace(" ", "")
        m = re.fullmatch(r"(?:(-?\d*)l)?([+-]?\d+)?", t)
        if not t or m is None:
            raise ValueError(f"not a linear form in l: {text!r}")
        coef, const = m.groups()
        if coef is None:
            a = 0
        elif coef in ("", "+"):
            a = 1
        elif coef == "-":
            a = -1
        else:
            a = int(coef)
        return cls(a, int(const) if const else 0)

    def __add__(self, other: "LinearForm") -> "LinearForm":
        return LinearForm(self.a + other.a, self.b + other.b)

    def __sub__(self, other: "LinearForm") -> "LinearForm":
        return LinearForm(self.a - other.a, self.b - other.b)

    def scale(self, k: int) -> "LinearForm":
        return LinearForm(self.a * k, self.b * k)

    def at(self, l: int) -> int:
        return self.a * l + self.b

    def __str__(self):
        if self.a == 0:
            return str(self.b)
        head = "l" if self.a == 1 else ("-l" if self.a == -1 else f"{self.a}l")
        if self.b == 0:
            return head
        return f"{head}{self.b:+d}"


ZERO = LinearForm(0, 0)
TOP = LinearForm(3, 10)  # v2 |Spin7(q)| and v2 |X(q)|


def phi_v2(n: int, branch: int) -> LinearForm:
    if branch not in (1, 3):
        raise ValueError("branch is q mod 4, so 1 or 3")
    big, small = LinearForm(1, 2), LinearForm(0, 1)
    if n == 1:
        return big if branch == 1 else small
    if n == 2:
        return small if branch == 1 else big
    if n == 4:
        return small
    if n in (3, 6, 7, 14):
        return ZERO
    raise UnsupportedIndex(f"phi_{n} is not used here")


def _v2_fraction(c: Fraction) -> int:
    if c == 0:
        raise ValueError("zero constant")
    num, den = abs(c.numerator), c.denominator
    return ((num & -num).bit_length() - 1) - ((den & -den).bit_length() - 1)


_TOKEN = re.compile(r"^(?:q(?:\^(\d+))?|p(\d+)(?:\^(\d+))?)$")


@dataclass(frozen=True)
class CycloDegree:
    c: Fraction = Fraction(1)
    unit7: bool = False
    qpow: int = 0
    phi: tuple = field(default_factory=tuple)  # sorted (n, e) pairs

    @classmethod
    def parse(cls, text: str) -> "CycloDegree":
        c = Fraction(1)
        unit7 = False
        qpow = 0
        phi: dict[int, int] = {}
        for tok in text.split():
            if tok == "r7":
                unit7 = True
                continue
            m = _TOKEN.match(tok)
            if m is None:
                c *= Fraction(tok)
                continue
            qe, n, e = m.groups()
            if n is None:
                qpow += int(qe) if qe else 1
            else:
                n = int(n)
                phi_v2(n, 1)  # rejects unsupported indices early
                phi[n] = phi.get(n, 0) + (int(e) if e else 1)
        return cls(c, unit7, qpow, tuple(sorted(phi.items())))

    def v2(self, branch: int) -> LinearForm:
        # q is odd and sqrt(-7) is a 2-adic unit, so neither contributes
        out = LinearForm(0, _v2_fraction(self.c))
        for n, e in self.phi:
            out = out + phi_v2(n, branch).scale(e)
        return out

    def __mul__(self, other: "CycloDegree") -> "CycloDegree":
        phi = dict(self.phi)
        for n, e in other.phi:
            phi[n] = phi.get(n, 0) + e
        if self.unit7 and other.unit7:
            raise ValueError("product of two sqrt(-7) factors is not modelled")
        return CycloDegree(self.c * other.c, self.unit7 or other.unit7,
                           self.qpow + other.qpow, tuple(sorted(phi.items())))


def degree_v2(d: CycloDegree, branch: int) -> LinearForm:
    return d.v2(branch)
