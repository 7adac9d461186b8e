"""Coordinates on a finite abelian group given as a lattice section.

The group is Lambda / Lambda0, where Lambda0 <= Lambda <= Z^k are full rank
lattices: Lambda0 is the relation lattice of an ambient group Z^k / Lambda0
and Lambda is spanned by Lambda0 together with some generator vectors.
A Smith decomposition turns this into a direct sum of cyclic groups.
"""

from __future__ import annotations

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import hermite_normal_form, smith_normal_decomp


class NotInSubgroup(ValueError):
    pass


class AbelianSection:
    def __init__(self, relations, generators):
        rel = [list(map(int, r)) for r in relations]
        gens = [list(map(int, g)) for g in generators]
        k = len(rel[0])
        # row basis of Lambda
        span = Matrix(rel + gens)
        H = hermite_normal_form(span.T).T  # columns of HNF(span.T) span the row lattice
        rows = [list(H.row(i)) for i in range(H.rows) if any(H.row(i))]
        B = Matrix(rows)
        if B.rows != k:
            raise ValueError("relation lattice must have full rank")
        C = Matrix(rel) * B.inv()
        if any(v.q != 1 for v in C):
            raise ValueError("relations do not lie in the generated lattice")
        D, S, T = smith_normal_decomp(C, domain=ZZ)
        diag = [abs(int(D[i, i])) for i in range(k)]
        keep = [i for i in range(k) if diag[i] != 1]
        self.k = k
        self.moduli = tuple(diag[i] for i in keep)
        det = int(B.det())
        W = B.adjugate() * T
        self._det = det
        self._W = [[int(W[r, i]) for i in keep] for r in range(k)]
        Tinv = T.inv()
        self.basis = [[int(v) for v in (Tinv.row(i) * B)] for i in keep]

    @property
    def order(self) -> int:
        out = 1
        for n in self.moduli:
            out *= n
        return out

    def coords(self, x) -> tuple[int, ...]:
        out = []
        for j, n in enumerate(self.moduli):
            s = sum(int(x[r]) * self._W[r][j] for r in range(self.k))
            if s % self._det:
                raise NotInSubgroup(f"{tuple(x)} is not in the subgroup")
            out.append((s // self._det) % n)
        return tuple(out)

    def contains(self, x) -> bool:
        try:
            self.coords(x)
        except NotInSubgroup:
            return False
        return True

    def vector(self, c) -> list[int]:
        """An ambient vector representing the element with coordinates c."""
        return [sum(ci * b[r] for ci, b in zip(c, self.basis)) for r in range(self.k)]
