"""Finite fields F_q ⊂ F_{q^2} (Zech logarithms) and residue rings Z/2^k."""

from __future__ import annotations

from functools import lru_cache
from itertools import product

from sympy import factorint


class ParamsInvalid(ValueError):
    pass


def prime_power(q: int) -> tuple[int, int]:
    f = factorint(q)
    if len(f) != 1:
        raise ParamsInvalid(f"{q} is not a prime power")
    (p, e), = f.items()
    return p, e


def _poly_mulmod_x(vec: tuple[int, ...], modpoly: tuple[int, ...], p: int) -> tuple[int, ...]:
    # multiply by x modulo a monic polynomial; modpoly holds the low coefficients
    n = len(vec)
    top = vec[-1]
    shifted = (0,) + vec[:-1]
    return tuple((shifted[i] - top * modpoly[i]) % p for i in range(n))


class FieldCtx:
    """F_{q^2} with a cached primitive element.

    Elements are integers: 0 is zero, and ``1 + k`` is the k-th power of the
    primitive element. Multiplication is index arithmetic, addition goes
    through a Zech table.
    """

    def __init__(self, q: int):
        p, e = prime_power(q)
        if p == 2:
            raise ParamsInvalid("q must be odd")
        self.q = q
        self.p = p
        self.order = q * q
        self.n = self.order - 1
        n_deg = 2 * e
        self.modulus, vecs = self._primitive_modulus(p, n_deg)
        index = {v: i + 1 for i, v in enumerate(vecs)}
        index[(0,) * n_deg] = 0
        self._vecs = vecs
        one = [0] * n_deg
        one[0] = 1
        # zech[k] = index of (g^k + 1)
        self._zech = [index[tuple((a + b) % p for a, b in zip(v, one))] for v in vecs]
        self.neg_one = self.n // 2  # log of -1
        self._ints = self._prime_subfield(index, n_deg)

    @staticmethod
    def _primitive_modulus(p: int, n: int):
        order = p ** n - 1
        primes = list(factorint(order))

        def mulmod(u, v, low):
            prod_ = [0] * (2 * n - 1)
            for i, a in enumerate(u):
                if a:
                    for j, b in enumerate(v):
                        prod_[i + j] += a * b
            for d in range(2 * n - 2, n - 1, -1):
                c = prod_[d] % p
                if c:
                    for i in range(n):
                        prod_[d - n + i] -= c * low[i]
            return tuple(c % p for c in prod_[:n])

        def powmod(k, low):
            result = (1,) + (0,) * (n - 1)
            base = (0, 1) + (0,) * (n - 2) if n > 1 else ((-low[0]) % p,)
            while k:
                if k & 1:
                    result = mulmod(result, base, low)
                base = mulmod(base, base, low)
                k >>= 1
            return result

        one = (1,) + (0,) * (n - 1)
        for low in product(range(p), repeat=n):
            if low[0] == 0:
                continue
            if powmod(order, low) != one:
                continue
            if any(powmod(order // r, low) == one for r in primes):
                continue
            seen = []
            x = one
            for _ in range(order):
                seen.append(x)
                x = _poly_mulmod_x(x, low, p) if n > 1 else ((x[0] * (-low[0])) % p,)
            return low, seen
        raise RuntimeError("no primitive polynomial found")

    def _prime_subfield(self, index, n_deg):
        out = {}
        for a in range(self.p):
            v = [0] * n_deg
            v[0] = a
            out[a] = index[tuple(v)]
        return out

    # arithmetic on element indices
    def from_int(self, a: int) -> int:
        return self._ints[a % self.p]

    def power_of_generator(self, k: int) -> int:
        return 1 + k % self.n

    def log(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("log of zero")
        return a - 1

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return 1 + (a + b - 2) % self.n

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 + (-(a - 1)) % self.n

    def neg(self, a: int) -> int:
        if a == 0:
            return 0
        return 1 + (a - 1 + self.neg_one) % self.n

    def add(self, a: int, b: int) -> int:
        if a == 0:
            return b
        if b == 0:
            return a
        # g^i + g^j = g^i (1 + g^(j-i))
        i, j = a - 1, b - 1
        z = self._zech[(j - i) % self.n]
        if z == 0:
            return 0
        return 1 + (i + z - 1) % self.n

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def pow(self, a: int, k: int) -> int:
        if a == 0:
            return 0 if k else 1
        return 1 + ((a - 1) * k) % self.n

    def mult_order(self, a: int) -> int:
        from math import gcd
        return self.n // gcd(self.n, a - 1)

    def in_subfield(self, a: int) -> bool:
        """True iff ``a`` lies in F_q."""
        return a == 0 or (a - 1) % (self.q + 1) == 0

    def root_of_unity(self, m: int) -> int:
        """A primitive m-th root of unity (m must divide q^2 - 1)."""
        if self.n % m:
            raise ParamsInvalid(f"no primitive {m}-th root of unity in F_{self.order}")
        return 1 + self.n // m


@lru_cache(maxsize=None)
def field(q: int) -> FieldCtx:
    return FieldCtx(q)


class ResidueCtx:
    """Arithmetic modulo 2^k."""

    def __init__(self, k: int):
        if k < 1:
            raise ValueError("k must be positive")
        self.k = k
        self.mod = 1 << k

    def reduce(self, a: int) -> int:
        return a % self.mod

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.mod

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.mod

    def neg(self, a: int) -> int:
        return (-a) % self.mod

    def is_unit(self, a: int) -> bool:
        return a % 2 == 1

    def inv(self, a: int) -> int:
        return pow(a, -1, self.mod)
