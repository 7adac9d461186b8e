"""Quadratic forms over F_2 and central products of extraspecial groups.

An extraspecial group 2^(1+2n) is presented with A = Z/m (a cyclic central
subgroup containing the centre at m/2) and Q = F_2^(2n), via the cocycle
s(u) s(v) = z^beta(u, v) s(u + v), where beta is bilinear with
beta(u, u) = q(u).  Isometries g of q act by s(u) -> s(g u) on the sections.
"""

from __future__ import annotations

from itertools import product

import numpy as np

from ..characters.clifford import Automorphism, Presentation


class QuadraticForm:
    def __init__(self, n: int, diag, cross):
        # q(u) = sum diag[i] u_i + sum_{(i,j) in cross} u_i u_j
        self.n = n
        self.diag = tuple(diag)
        self.cross = tuple(sorted(cross))
        self.beta = np.zeros((n, n), dtype=np.int64)
        for i in range(n):
            self.beta[i, i] = self.diag[i]
        for i, j in self.cross:
            self.beta[min(i, j), max(i, j)] ^= 1

    def __call__(self, u) -> int:
        u = np.asarray(u)
        return int(u @ self.beta @ u) % 2

    def polar(self, u, v) -> int:
        return (self(np.add(u, v) % 2) - self(u) - self(v)) % 2

    def vectors(self):
        return [np.array(v, dtype=np.int64) for v in product((0, 1), repeat=self.n)]

    def preserved_by(self, g) -> bool:
        g = np.asarray(g)
        return all(self((g @ v) % 2) == self(v) for v in self.vectors())


def minus_form_4() -> QuadraticForm:
    """q = x0 x1 + x2^2 + x2 x3 + x3^2, the minus-type form of 2^(1+4)_-."""
    return QuadraticForm(4, (0, 0, 1, 1), [(0, 1), (2, 3)])


def plus_form_6() -> QuadraticForm:
    """Hyperbolic form x0 x1 + x2 x3 + x4 x5."""
    return QuadraticForm(6, (0,) * 6, [(0, 1), (2, 3), (4, 5)])


def q_index(v) -> int:
    out = 0
    for b in v:
        out = 2 * out + int(b)
    return out


def q_vector(k: int, n: int) -> np.ndarray:
    return np.array([(k >> (n - 1 - i)) & 1 for i in range(n)], dtype=np.int64)


def extraspecial_presentation(form: QuadraticForm, name: str = "", extra: int = 0) -> Presentation:
    """2^(1+2n), times (Z/2)^extra, with A = the centre."""
    n = form.n
    nq = 1 << n
    r = 1 + extra
    vecs = [q_vector(k, n) for k in range(nq)]
    qmul = np.array([[q_index((vecs[i] + vecs[j]) % 2) for j in range(nq)] for i in range(nq)])
    M = np.tile(np.eye(r, dtype=np.int64), (nq, 1, 1))
    f = np.zeros((nq, nq, r), dtype=np.int64)
    for i in range(nq):
        for j in range(nq):
            f[i, j, 0] = int(vecs[i] @ form.beta @ vecs[j]) % 2
    return Presentation((2,) * r, qmul, M, f, name=name)


def isometry_automorphism(pres: Presentation, g, n: int) -> Automorphism:
    """Automorphism s(e_i) -> s(g e_i) extended multiplicatively; checked."""
    g = np.asarray(g) % 2
    r = pres.r
    images = {}
    for i in range(n):
        e = np.zeros(n, dtype=np.int64)
        e[i] = 1
        images[q_index(e)] = (np.zeros(r, dtype=np.int64), q_index((g @ e) % 2))
    aut = pres.automorphism_from_images(np.eye(r, dtype=np.int64), images)
    aut.check(pres)
    return aut


def s8_form() -> QuadraticForm:
    """q(v) = |v|/2 on even subsets of 8 points modulo the full set, in the basis
    v_i = {i, 7} (i < 6).  Its isometry group is S_8 = O_6^+(2)."""
    return QuadraticForm(6, (1,) * 6, [(i, j) for i in range(6) for j in range(i + 1, 6)])


def _s8_coords(subset) -> np.ndarray:
    c = np.zeros(6, dtype=np.int64)
    for i in subset:
        if i < 6:
            c[i] ^= 1
    if 6 in subset:
        c ^= 1
    return c


def s8_matrix(perm) -> np.ndarray:
    """Matrix of a permutation of 8 points on the 6-dimensional space above."""
    cols = [_s8_coords({perm[i], perm[7]}) for i in range(6)]
    return np.stack(cols, axis=1)
