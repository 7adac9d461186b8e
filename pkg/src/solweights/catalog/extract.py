"""Presentations of monomial subgroups of K over their diagonal part.

For P <= K generated by monomial elements (each block diagonal or
antidiagonal), A = P n D is the subgroup of elements with trivial block
permutation and diagonal blocks.  It is abelian and normal, and P/A embeds in
C2 wr S3 via (block permutation, antidiagonal flags).  Logarithms of the
diagonal entries give coordinates on A.

Blocks listed in ``full_blocks`` (Q8 pieces, whose automorphisms need not
preserve the diagonal) are pushed into the quotient: there A only keeps the
scalars +-1, and the key records the block itself up to sign.
"""

from __future__ import annotations

import numpy as np

from ..algebra.abelian import AbelianSection, NotInSubgroup
from ..characters.clifford import Automorphism, Presentation
from .kmodel import IDP, KModel


class NotMonomial(ValueError):
    pass


class MonomialSubgroup:
    def __init__(self, K: KModel, generators, name: str = "", full_blocks=()):
        self.K = K
        self.full_blocks = tuple(full_blocks)
        self.name = name
        self.generators = list(generators)
        self.nF = K.F.n
        self._cosets()
        self._section()
        self.pres = self._presentation()

    # keys and logarithms --------------------------------------------------
    def key(self, x):
        flags = []
        for m in x[:3]:
            if m[1] == 0 and m[2] == 0:
                flags.append(0)
            elif m[0] == 0 and m[3] == 0:
                flags.append(1)
            else:
                raise NotMonomial("element is not monomial")
        if not self.full_blocks:
            return (x[3], tuple(flags))
        B = self.K.B
        return (x[3], tuple(flags), tuple(min(x[j], B.neg(x[j])) for j in self.full_blocks))

    def logvec(self, x):
        return [(x[j][0] - 1) % self.nF for j in range(3)]

    def _from_log(self, v):
        F = self.K.F
        blocks = [(F.power_of_generator(t), 0, 0, F.power_of_generator(-t)) for t in v]
        return self.K.canon((blocks[0], blocks[1], blocks[2], IDP))

    # construction ---------------------------------------------------------
    def _cosets(self):
        K = self.K
        e = K.ident
        reps = {self.key(e): e}
        order = [self.key(e)]
        queue = [e]
        while queue:
            s = queue.pop(0)
            for g in self.generators:
                y = K.mul(s, g)
                k = self.key(y)
                if k not in reps:
                    reps[k] = y
                    order.append(k)
                    queue.append(y)
        self.qkeys = order
        self.qindex = {k: i for i, k in enumerate(order)}
        self.reps = [reps[k] for k in order]
        self.rep_inv = [K.inv(s) for s in self.reps]
        schreier = []
        for s in self.reps:
            for g in self.generators:
                y = K.mul(s, g)
                r = self.rep_inv[self.qindex[self.key(y)]]
                schreier.append(K.mul(y, r))
        self._schreier = schreier

    def _section(self):
        n = self.nF
        rel = [[n, 0, 0], [0, n, 0], [0, 0, n], [n // 2] * 3]
        gens = [self.logvec(x) for x in self._schreier]
        self.A = AbelianSection(rel, gens)

    def decompose(self, x):
        """(coordinates in A, index in Q) with x = a * s(q)."""
        q = self.qindex.get(self.key(x))
        if q is None:
            raise NotInSubgroup("coset not in P")
        a = self.K.mul(x, self.rep_inv[q])
        return self.A.coords(self.logvec(a)), q

    def contains(self, x) -> bool:
        try:
            self.decompose(x)
        except (NotInSubgroup, NotMonomial):
            return False
        return True

    def element(self, coords, q):
        a = self._from_log(self.A.vector(coords))
        return self.K.mul(a, self.reps[q])

    @property
    def order(self) -> int:
        return self.A.order * len(self.reps)

    def _presentation(self) -> Presentation:
        K = self.K
        nq = len(self.reps)
        r = len(self.A.moduli)
        qmul = np.zeros((nq, nq), dtype=np.int64)
        f = np.zeros((nq, nq, r), dtype=np.int64)
        for i, s in enumerate(self.reps):
            for j, t in enumerate(self.reps):
                a, q = self.decompose(K.mul(s, t))
                qmul[i, j] = q
                f[i, j] = a
        basis = [self._from_log(b) for b in self.A.basis]
        M = np.zeros((nq, r, r), dtype=np.int64)
        for i, s in enumerate(self.reps):
            for j, b in enumerate(basis):
                a, q = self.decompose(K.conj(s, b))
                M[i, :, j] = a
        self._basis_elems = basis
        names = [f"{k[0]}{''.join(map(str, k[1]))}" for k in self.qkeys]
        return Presentation(self.A.moduli, qmul, M, f, qnames=names, name=self.name)

    # automorphisms --------------------------------------------------------
    def normalizes(self, g) -> bool:
        K = self.K
        return all(self.contains(K.conj(g, x)) for x in self.generators)

    def automorphism(self, g, name: str = "", check: bool = False) -> Automorphism:
        """Conjugation x -> g x g^-1 as presentation data."""
        K = self.K
        r = len(self.A.moduli)
        Ma = np.zeros((r, r), dtype=np.int64)
        for j, b in enumerate(self._basis_elems):
            a, q = self.decompose(K.conj(g, b))
            if q != 0:
                raise NotInSubgroup("conjugate of A leaves A")
            Ma[:, j] = a
        images = {}
        for x in self.generators:
            ax, qx = self.decompose(x)
            if qx == 0 or qx in images:
                continue
            b, p = self.decompose(K.conj(g, x))
            images[qx] = ((np.array(b) - Ma @ np.array(ax)), p)
        aut = self.pres.automorphism_from_images(Ma, images)
        aut.name = name
        if check:
            aut.check(self.pres)
        return aut
