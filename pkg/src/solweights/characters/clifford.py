"""Irreducible characters of a finite group with an abelian normal subgroup.

A group P is presented by an abelian normal subgroup A = Z/n_1 + ... + Z/n_r,
a small quotient Q = P/A with a section s, the conjugation matrices
M_q (s(q) a s(q)^-1 = M_q a) and the cocycle f(q1, q2) = s(q1) s(q2) s(q1 q2)^-1.
Elements are pairs (a, q) standing for a * s(q).

Irr(P) is built by the method of little groups: for each orbit representative
lambda of Q on Irr(A), the characters of the inertia group lying over lambda
correspond to projective characters of the stabiliser Q_lambda with cocycle
lambda(f).  Those are read off from an ordinary character table of the small
central extension C x_c Q_lambda, where C is the cyclic group generated by the
cocycle values.

Automorphisms are triples (Ma, U, pi) with alpha(a s(q)) = (Ma a + U[q]) s(pi[q]);
they act on characters by pull-back, chi -> chi o alpha.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from math import gcd, isqrt

import numpy as np

from ..algebra.groups import FuncKind, GenGroup
from . import modp
from .dixon import dixon_table, v2


def _lcm(a, b):
    return a * b // gcd(a, b)


class NotAnAutomorphism(ValueError):
    pass


class Presentation:
    def __init__(self, moduli, qmul, M, f, qnames=None, name=""):
        self.moduli = tuple(int(n) for n in moduli)
        self.r = len(self.moduli)
        self.qmul = np.asarray(qmul, dtype=np.int64)
        self.nq = self.qmul.shape[0]
        mod = np.array(self.moduli, dtype=np.int64)
        self.M = np.asarray(M, dtype=np.int64).reshape(self.nq, self.r, self.r) % mod[:, None]
        self.f = np.asarray(f, dtype=np.int64).reshape(self.nq, self.nq, self.r) % mod
        self._mod = mod
        self.qnames = qnames or [str(i) for i in range(self.nq)]
        self.name = name
        ident = np.nonzero((self.qmul == np.arange(self.nq)[None, :]).all(axis=1))[0]
        if len(ident) != 1 or ident[0] != 0:
            raise ValueError("element 0 of Q must be the identity")
        self.qinv = np.array([int(np.nonzero(self.qmul[q] == 0)[0][0]) for q in range(self.nq)])
        self.N = reduce(_lcm, self.moduli, 1)

    # group law on pairs ---------------------------------------------------
    @property
    def order(self) -> int:
        return int(np.prod([int(n) for n in self.moduli], dtype=object)) * self.nq

    @property
    def order_v2(self) -> int:
        return v2(self.order)

    def identity(self):
        return ((0,) * self.r, 0)

    def mul(self, x, y):
        a, q1 = x
        b, q2 = y
        v = (np.array(a) + self.M[q1] @ np.array(b) + self.f[q1, q2]) % self._mod
        return (tuple(int(t) for t in v), int(self.qmul[q1, q2]))

    def inv(self, x):
        a, q = x
        qi = int(self.qinv[q])
        # (a, q)(b, qi) = (a + M_q b + f(q, qi), 1) = 1
        rhs = (-(np.array(a) + self.f[q, qi])) % self._mod
        b = self.apply_matrix(self.Minv(q), rhs)
        return (tuple(int(t) for t in b), qi)

    def Minv(self, q):
        return self.M[int(self.qinv[q])]

    def apply_matrix(self, Mx, v):
        return (np.asarray(Mx) @ np.asarray(v)) % self._mod

    def kind(self) -> FuncKind:
        return FuncKind(self.mul, self.inv, self.identity())

    def generators(self):
        gens = []
        for j in range(self.r):
            e = [0] * self.r
            e[j] = 1
            gens.append((tuple(e), 0))
        gens += [((0,) * self.r, q) for q in range(1, self.nq)]
        return gens

    def enumerate(self, cap: int = 1 << 16) -> GenGroup:
        if self.order > cap:
            raise ValueError(f"presentation of order {self.order} is above the enumeration cap")
        return GenGroup(self.kind(), self.generators(), cap=cap)

    def check(self):
        """Verify the presentation defines a group (cocycle and action identities)."""
        nq, mod = self.nq, self._mod
        if not (self.M[0] == np.eye(self.r, dtype=np.int64) % mod[:, None]).all():
            raise ValueError("M_1 must be the identity")
        if self.f[0].any() or self.f[:, 0].any():
            raise ValueError("section must be normalised")
        for j, n in enumerate(self.moduli):
            # each M_q must be well defined on Z/n_j
            if ((self.M[:, :, j] * n) % mod).any():
                raise ValueError("M_q is not well defined on A")
        for q1 in range(nq):
            for q2 in range(nq):
                q12 = self.qmul[q1, q2]
                lhs = (self.M[q1] @ self.M[q2]) % mod[:, None]
                # conjugation by f(q1,q2) is trivial on abelian A
                if not (lhs == self.M[q12]).all():
                    raise ValueError(f"M is not an action at ({q1},{q2})")
                for q3 in range(nq):
                    q23 = self.qmul[q2, q3]
                    a = (self.f[q1, q2] + self.f[q12, q3]) % mod
                    b = (self.M[q1] @ self.f[q2, q3] + self.f[q1, q23]) % mod
                    if not (a == b).all():
                        raise ValueError(f"cocycle identity fails at ({q1},{q2},{q3})")
        return True

    def automorphism_from_images(self, Ma, images: dict) -> "Automorphism":
        """Extend Ma on A and the images (U[q], pi[q]) of generating sections of Q.

        Uses alpha(s(q1)) alpha(s(q2)) = alpha(f(q1, q2)) alpha(s(q1 q2)).
        """
        mod = self._mod
        Ma = np.asarray(Ma, dtype=np.int64) % mod[:, None]
        U = np.zeros((self.nq, self.r), dtype=np.int64)
        pi = np.full(self.nq, -1, dtype=np.int64)
        pi[0] = 0
        gens = sorted(images)
        for q, (u, p) in images.items():
            U[q] = np.asarray(u) % mod
            pi[q] = p
        done = [0] + [q for q in gens if q != 0]
        queue = list(done)
        while queue:
            q1 = queue.pop(0)
            for q2 in gens:
                q = int(self.qmul[q1, q2])
                if pi[q] >= 0:
                    continue
                p1, p2 = int(pi[q1]), int(pi[q2])
                U[q] = (U[q1] + self.M[p1] @ U[q2] + self.f[p1, p2] - Ma @ self.f[q1, q2]) % mod
                pi[q] = self.qmul[p1, p2]
                queue.append(q)
        if (pi < 0).any():
            raise NotAnAutomorphism("images do not reach all of Q")
        return Automorphism(Ma, U, pi)

    def inner(self, q: int) -> "Automorphism":
        g = ((0,) * self.r, q)
        gi = self.inv(g)
        U = np.zeros((self.nq, self.r), dtype=np.int64)
        pi = np.zeros(self.nq, dtype=np.int64)
        for p in range(self.nq):
            a, t = self.mul(self.mul(g, ((0,) * self.r, p)), gi)
            U[p] = a
            pi[p] = t
        return Automorphism(self.M[q].copy(), U, pi)

    def inner_by(self, x) -> "Automorphism":
        """Conjugation by an arbitrary element x = (a, q)."""
        xi = self.inv(x)
        U = np.zeros((self.nq, self.r), dtype=np.int64)
        pi = np.zeros(self.nq, dtype=np.int64)
        for p in range(self.nq):
            a, t = self.mul(self.mul(x, ((0,) * self.r, p)), xi)
            U[p] = a
            pi[p] = t
        return Automorphism(self.M[x[1]].copy(), U, pi)


@dataclass
class Automorphism:
    Ma: np.ndarray
    U: np.ndarray
    pi: np.ndarray
    name: str = ""

    def apply(self, pres: Presentation, x):
        a, q = x
        v = (self.Ma @ np.array(a) + self.U[q]) % pres._mod
        return (tuple(int(t) for t in v), int(self.pi[q]))

    def compose(self, other: "Automorphism", pres: Presentation) -> "Automorphism":
        """self o other."""
        mod = pres._mod
        Ma = (self.Ma @ other.Ma) % mod[:, None]
        U = ((other.U @ self.Ma.T) + self.U[other.pi]) % mod
        pi = self.pi[other.pi]
        return Automorphism(Ma, U, pi)

    def check(self, pres: Presentation):
        mod, nq = pres._mod, pres.nq
        if sorted(self.pi.tolist()) != list(range(nq)):
            raise NotAnAutomorphism("pi is not a permutation of Q")
        for j, n in enumerate(pres.moduli):
            if ((self.Ma[:, j] * n) % mod).any():
                raise NotAnAutomorphism("Ma is not well defined on A")
        for q in range(nq):
            lhs = (self.Ma @ pres.M[q]) % mod[:, None]
            rhs = (pres.M[self.pi[q]] @ self.Ma) % mod[:, None]
            if not (lhs == rhs).all():
                raise NotAnAutomorphism(f"action not respected at q={q}")
        for q1 in range(nq):
            if self.pi[pres.qmul[q1]].tolist() != pres.qmul[self.pi[q1]][self.pi].tolist():
                raise NotAnAutomorphism("pi is not a homomorphism")
            for q2 in range(nq):
                lhs = (self.U[q1] + pres.M[self.pi[q1]] @ self.U[q2]
                       + pres.f[self.pi[q1], self.pi[q2]]) % mod
                rhs = (self.Ma @ pres.f[q1, q2] + self.U[pres.qmul[q1, q2]]) % mod
                if not (lhs == rhs).all():
                    raise NotAnAutomorphism(f"cocycle not respected at ({q1},{q2})")
        # bijectivity on A
        grid = _all_vectors(pres.moduli)
        img = (grid @ self.Ma.T) % mod
        if len(np.unique(_encode(img, pres.moduli))) != len(grid):
            raise NotAnAutomorphism("Ma is not injective on A")
        return True


def _all_vectors(moduli):
    if not moduli:
        return np.zeros((1, 0), dtype=np.int64)
    grids = np.meshgrid(*[np.arange(n, dtype=np.int64) for n in moduli], indexing="ij")
    return np.stack([g.ravel() for g in grids], axis=1)


def _encode(vecs, moduli):
    idx = np.zeros(len(vecs), dtype=np.int64)
    for j, n in enumerate(moduli):
        idx = idx * n + vecs[:, j]
    return idx


@dataclass
class _Block:
    qs: list            # elements of the stabiliser Q_lambda
    degrees: list       # degrees of the projective characters
    values: np.ndarray  # (#chars, len(qs)) values mod P at the sections s(q)


class CliffordIrr:
    """Labelled Irr(P) for a presentation, with automorphism action."""

    def __init__(self, pres: Presentation, prime: int | None = None):
        self.pres = pres
        N, nq, mod = pres.N, pres.nq, pres._mod
        scale = np.array([N // n for n in pres.moduli], dtype=np.int64)
        self._scale = scale
        ell = _all_vectors(pres.moduli)
        L = (ell * scale) % N if pres.r else ell
        self._L_all = L
        idx_self = _encode(ell, pres.moduli)
        images = np.empty((len(ell), nq), dtype=np.int64)
        for q in range(nq):
            images[:, q] = self._index_of((L @ pres.M[q]) % N)
        rep = images.min(axis=1)
        reps = np.nonzero(rep == idx_self)[0]
        self.rep_of_index = rep
        self.reps = reps
        stab = (images[reps] == idx_self[reps, None])
        self._stab = stab
        Lr = L[reps]
        fl = pres.f.reshape(nq * nq, pres.r)
        cvals = (Lr @ fl.T) % N if pres.r else np.zeros((len(reps), nq * nq), dtype=np.int64)
        pair_ok = (stab[:, :, None] & stab[:, None, :]).reshape(len(reps), nq * nq)
        cvals = np.where(pair_ok, cvals, -1)
        keys = np.concatenate([stab.astype(np.int64), cvals], axis=1)
        ukeys, kinv = np.unique(keys, axis=0, return_inverse=True)
        self._key_of_rep = kinv.reshape(-1)

        exp_bound = 1 << (N * nq).bit_length()
        self.prime = prime or modp.choose_prime(exp_bound, 2 * isqrt(N * nq + 1) * exp_bound + 1)
        self.omega = modp.root_of_unity(self.prime, N)
        self._wpow = np.array([pow(self.omega, t, self.prime) for t in range(N)], dtype=np.int64)
        self.blocks = [self._block(k) for k in ukeys]

        lab_rep, lab_j, lab_deg = [], [], []
        self._first_label = np.zeros(len(reps), dtype=np.int64)
        for i in range(len(reps)):
            b = self.blocks[self._key_of_rep[i]]
            self._first_label[i] = len(lab_rep)
            idx = len(b.qs)
            for j, d in enumerate(b.degrees):
                lab_rep.append(i)
                lab_j.append(j)
                lab_deg.append(d * (nq // idx))
        self.label_rep = np.array(lab_rep, dtype=np.int64)
        self.label_j = np.array(lab_j, dtype=np.int64)
        self.degrees = np.array(lab_deg, dtype=np.int64)
        self._rep_position = {int(r): i for i, r in enumerate(reps)}
        self._inner = {}
        if int((self.degrees.astype(object) ** 2).sum()) != pres.order:
            raise RuntimeError("sum of squared degrees differs from |P|")

    def __len__(self):
        return len(self.degrees)

    def _index_of(self, Lrows):
        ell = Lrows // self._scale if self.pres.r else Lrows
        return _encode(ell, self.pres.moduli)

    def _block(self, key) -> _Block:
        pres = self.pres
        nq, N, P = pres.nq, pres.N, self.prime
        mask = key[:nq].astype(bool)
        qs = [int(q) for q in np.nonzero(mask)[0]]
        c = key[nq:].reshape(nq, nq)
        if len(qs) == 1:
            return _Block(qs, [1], np.ones((1, 1), dtype=np.int64))
        qmul = pres.qmul

        def mul(x, y):
            return ((x[0] + y[0] + int(c[x[1], y[1]])) % N, int(qmul[x[1], y[1]]))

        def inv(x):
            qi = int(pres.qinv[x[1]])
            return ((-x[0] - int(c[x[1], qi])) % N, qi)

        E = GenGroup(FuncKind(mul, inv, (0, 0)), [(0, q) for q in qs])
        # engine-internal: twisted stabiliser groups can exceed the oracle class cap
        tab = dixon_table(E, prime=P, max_order=1 << 15, max_classes=4096)
        cls = E.class_of
        central = sorted({t for t, q in E.elements if q == 0})
        g = reduce(gcd, central, N) % N if len(central) > 1 else 0
        degrees, rows = [], []
        for ch in tab.characters:
            ok = True
            if g:
                want = self._wpow[g] * ch.degree % P
                ok = int(ch.values[cls[(g, 0)]]) == want
            if ok:
                degrees.append(ch.degree)
                rows.append([int(ch.values[cls[(0, q)]]) for q in qs])
        if sum(d * d for d in degrees) != len(qs):
            raise RuntimeError("projective characters do not account for |Q_lambda|")
        return _Block(qs, degrees, np.array(rows, dtype=np.int64))

    # queries ------------------------------------------------------------
    def defects(self) -> np.ndarray:
        top = self.pres.order_v2
        return np.array([top - v2(int(d)) for d in self.degrees], dtype=np.int64)

    def histogram(self) -> dict[int, int]:
        vals, counts = np.unique(self.defects(), return_counts=True)
        return {int(v): int(c) for v, c in zip(vals, counts)}

    def label_key(self, k: int) -> tuple:
        """(orbit representative of Irr(A) as an index, index of the projective character)."""
        return (int(self.reps[self.label_rep[k]]), int(self.label_j[k]))

    def _inner_data(self, r):
        if r not in self._inner:
            self._inner[r] = self.pres.inner(r)
        return self._inner[r]

    def permutation(self, aut: Automorphism) -> np.ndarray:
        """perm[k] = index of chi_k o aut."""
        pres = self.pres
        N, nq, P = pres.N, pres.nq, self.prime
        Lr = self._L_all[self.reps]
        L1 = (Lr @ aut.Ma) % N
        idx1 = self._index_of(L1)
        rep1 = self.rep_of_index[idx1]
        imgs = np.empty((len(Lr), nq), dtype=np.int64)
        for q in range(nq):
            imgs[:, q] = self._index_of((L1 @ pres.M[q]) % N)
        r_of = np.argmax(imgs == rep1[:, None], axis=1)
        out = np.empty(len(self.degrees), dtype=np.int64)
        for i in range(len(Lr)):
            pos1 = self._rep_position[int(rep1[i])]
            blk1 = self.blocks[self._key_of_rep[pos1]]
            first0 = self._first_label[i]
            first1 = self._first_label[pos1]
            blk0 = self.blocks[self._key_of_rep[i]]
            if len(blk1.degrees) == 1:
                out[first0] = first1
                continue
            inn = self._inner_data(int(r_of[i]))
            pos_in0 = {q: t for t, q in enumerate(blk0.qs)}
            expo = np.empty(len(blk1.qs), dtype=np.int64)
            src = np.empty(len(blk1.qs), dtype=np.int64)
            for t, q2 in enumerate(blk1.qs):
                q1 = int(inn.pi[q2])
                e = int(L1[i] @ inn.U[q2]) + int(Lr[i] @ aut.U[q1])
                expo[t] = e % N
                src[t] = pos_in0[int(aut.pi[q1])]
            phase = self._wpow[expo]
            for j in range(len(blk0.degrees)):
                vec = phase * blk0.values[j, src] % P
                hit = np.nonzero((blk1.values == vec[None, :]).all(axis=1))[0]
                if len(hit) != 1:
                    raise RuntimeError("transported character not found")
                out[first0 + j] = first1 + hit[0]
        return out

    def class_function(self, k: int, elements) -> list[int]:
        """Values of the k-th character at the given pairs (a, q), mod the table prime."""
        pres = self.pres
        i, j = int(self.label_rep[k]), int(self.label_j[k])
        blk = self.blocks[self._key_of_rep[i]]
        L = self._L_all[self.reps[i]]
        pos = {q: t for t, q in enumerate(blk.qs)}
        stab = set(blk.qs)
        trans, seen = [], set()
        for r in range(pres.nq):
            coset = frozenset(int(pres.qmul[r, s]) for s in blk.qs)
            if coset not in seen:
                seen.add(coset)
                trans.append(((0,) * pres.r, r))
        out = []
        for x in elements:
            tot = 0
            for t in trans:
                y = pres.mul(pres.mul(pres.inv(t), x), t)
                a, q = y
                if q in stab:
                    tot += int(self._wpow[int(np.dot(L, a)) % pres.N]) * int(blk.values[j, pos[q]])
            out.append(tot % self.prime)
        return out


def oracle_compare(pres: Presentation, auts=(), cap: int = 1 << 13) -> dict:
    """Check CliffordIrr against Dixon-Schneider on the enumerated group.

    Returns the label-to-row matching and, for each automorphism, whether the
    transported permutation agrees with pulling back the Dixon rows.
    """
    G = pres.enumerate(cap=cap)
    e = G.exponent()
    lo = 2 * isqrt(G.order) * e + 1
    modulus = _lcm(e, 1 << (pres.N * pres.nq).bit_length())
    P = modp.choose_prime(modulus, max(lo, 2 * isqrt(pres.N * pres.nq + 1) * modulus + 1))
    irr = CliffordIrr(pres, prime=P)
    tab = dixon_table(G, prime=P, max_order=cap)
    reps = [c[0] for c in G.classes]
    rows = {ch.key(): i for i, ch in enumerate(tab.characters)}
    match = []
    for k in range(len(irr)):
        vals = tuple(irr.class_function(k, reps))
        if vals not in rows:
            raise RuntimeError(f"label {irr.label_key(k)} is not an irreducible character")
        match.append(rows[vals])
    if sorted(match) != list(range(len(tab.characters))):
        raise RuntimeError("labels do not biject onto Irr(P)")
    row_to_label = {r: k for k, r in enumerate(match)}
    agree = []
    for a in auts:
        img = [G.class_of[a.apply(pres, x)] for x in reps]
        perm = irr.permutation(a)
        ok = True
        for k in range(len(irr)):
            pulled = tuple(int(v) for v in tab.characters[match[k]].values[img])
            if row_to_label.get(rows.get(pulled, -1), -1) != perm[k]:
                ok = False
                break
        agree.append(ok)
    return {"irr": irr, "table": tab, "match": match, "agree": agree}
