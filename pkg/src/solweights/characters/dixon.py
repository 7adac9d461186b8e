"""Exact character tables by the Dixon–Schneider method over F_P."""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from math import isqrt

import numpy as np

from ..algebra.groups import GenGroup
from . import modp


class ScaleExceeded(RuntimeError):
    pass


MAX_ORDER = 1 << 13
MAX_CLASSES = 400


def v2(n: int) -> int:
    n = abs(n)
    if n == 0:
        raise ValueError("v2(0)")
    return (n & -n).bit_length() - 1


def defect(degree: int, group_order_v2: int) -> int:
    """2-defect of a character of the given degree in a group with |G|_2 = 2^group_order_v2."""
    return group_order_v2 - v2(degree)


@dataclass
class ClassFunction:
    degree: int
    values: np.ndarray  # indexed by class, entries mod P

    def key(self) -> tuple:
        return tuple(int(v) for v in self.values)


@dataclass
class CharTable:
    group_order: int
    class_sizes: list[int]
    prime: int
    characters: list[ClassFunction]
    inverse_class: list[int] = field(default_factory=list)

    @property
    def degrees(self) -> list[int]:
        return [c.degree for c in self.characters]

    def check_orthogonality(self) -> bool:
        P, n = self.prime, self.group_order
        sizes = np.array(self.class_sizes, dtype=np.int64) % P
        inv = self.inverse_class
        for a in self.characters:
            for b in self.characters:
                s = int(np.sum((a.values * sizes) % P * b.values[inv] % P) % P)
                want = n % P if a is b else 0
                if s != want:
                    return False
        return True


def _structure_matrices(G: GenGroup):
    classes = G.classes
    cls = G.class_of
    reps = [c[0] for c in classes]
    k = len(classes)
    kind = G.kind
    mats = []
    for j, Kj in enumerate(classes):
        M = np.zeros((k, k), dtype=np.int64)
        invs = [kind.inv(x) for x in Kj]
        for kk, g in enumerate(reps):
            for xi in invs:
                M[cls[kind.mul(xi, g)], kk] += 1
        mats.append(M)
    return mats


def table_prime(G: GenGroup) -> int:
    e = G.exponent()
    return modp.choose_prime(e, 2 * isqrt(G.order) * e + 1)


def dixon_table(G: GenGroup, prime: int | None = None, seed: int = 0,
                max_order: int = MAX_ORDER, max_classes: int = MAX_CLASSES) -> CharTable:
    """Irreducible characters of G with exact degrees and values mod P."""
    if G.order > max_order or len(G.classes) > max_classes:
        raise ScaleExceeded(f"group of order {G.order} with {len(G.classes)} classes")
    P = prime or table_prime(G)
    rng = random.Random(seed)
    classes = G.classes
    k = len(classes)
    sizes = [len(c) for c in classes]
    kind = G.kind
    inverse_class = [G.class_of[kind.inv(c[0])] for c in classes]
    mats = [M % P for M in _structure_matrices(G)]

    pending = [np.eye(k, dtype=np.int64)]
    done = []
    e0 = G.class_of[kind.identity()]
    order = sorted((j for j in range(k) if j != e0), key=lambda j: -sizes[j])
    for j in order:
        if not pending:
            break
        nxt = []
        for B in pending:
            if B.shape[1] == 1:
                done.append(B)
                continue
            nxt.extend(_split(mats[j], B, P, rng))
        pending = nxt
    done.extend(pending)
    if any(B.shape[1] != 1 for B in done):
        raise RuntimeError("class matrices failed to separate characters")

    n = G.order
    inv_sizes = np.array([pow(s, -1, P) for s in sizes], dtype=np.int64)
    chars = []
    for B in done:
        w = B[:, 0] % P
        w = (w * pow(int(w[e0]), -1, P)) % P
        s = int(np.sum(w * w[inverse_class] % P * inv_sizes % P) % P)
        d2 = n * pow(s, -1, P) % P
        deg = _lift_degree(d2, n, P)
        values = w * deg % P * inv_sizes % P
        chars.append(ClassFunction(deg, values))
    chars.sort(key=lambda c: (c.degree, c.key()))
    tab = CharTable(n, sizes, P, chars, inverse_class)
    if sum(c.degree ** 2 for c in chars) != n:
        raise RuntimeError("degree check failed")
    return tab


def _split(M, B, P, rng):
    """Split the column space of B (invariant under M) into M-eigenspaces."""
    Bc, piv = modp.column_echelon(B, P)
    A = modp.matmul(M, Bc, P)[piv]
    n = A.shape[0]
    for _ in range(8):
        mp = modp.minimal_polynomial(A, P, rng)
        roots = modp.roots_squarefree_split(mp, P, rng)
        pieces = []
        for r in roots:
            N = modp.nullspace((A - r * np.eye(n, dtype=np.int64)) % P, P)
            if N.shape[1]:
                pieces.append(modp.matmul(Bc, N, P))
        if sum(p.shape[1] for p in pieces) == n:
            return pieces
    raise RuntimeError("eigenspace decomposition failed")


def _lift_degree(d2: int, n: int, P: int) -> int:
    for d in range(1, isqrt(n) + 1):
        if n % d == 0 and (d * d) % P == d2:
            return d
    raise RuntimeError("degree not recognised")


def z_defect_zero(G: GenGroup | None = None, table: CharTable | None = None) -> int:
    """Number of irreducible characters of 2-defect zero."""
    if table is None:
        if G.order == 1:
            return 1
        if G.order & (G.order - 1) == 0:
            return 0
        table = dixon_table(G, max_order=1 << 16)
    n2 = v2(table.group_order)
    return sum(1 for c in table.characters if v2(c.degree) == n2)


def defect_histogram(degrees, group_order: int) -> dict[int, int]:
    n2 = v2(group_order)
    return dict(sorted(Counter(defect(d, n2) for d in degrees).items()))
