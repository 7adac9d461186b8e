from __future__ import annotations

from dataclasses import dataclass

from sympy import factorint

from ..algebra.fields import ParamsInvalid, prime_power
from ..characters.dixon import v2


@dataclass(frozen=True)
class Params:
    l: int
    q: int

    def __post_init__(self):
        p, _ = prime_power(self.q)
        if p == 2:
            raise ParamsInvalid("q must be odd")
        if v2(self.q * self.q - 1) != self.l + 3:
            raise ParamsInvalid(f"v2(q^2-1) != l+3 for q={self.q}, l={self.l}")
        if self.q % 4 != 1:
            raise ParamsInvalid("only q = 1 mod 4 is constructed")

    @property
    def x(self) -> int:
        return 1 << self.l

    @classmethod
    def for_l(cls, l: int) -> "Params":
        return cls(l, choose_q(l))


def choose_q(l: int) -> int:
    """Smallest prime power q = 1 (mod 4) with v2(q-1) = l+2."""
    if not 0 <= l <= 5:
        raise ParamsInvalid("l must lie in 0..5")
    q = 3
    while True:
        q += 2
        if len(factorint(q)) == 1 and q % 4 == 1 and v2(q - 1) == l + 2:
            return q
