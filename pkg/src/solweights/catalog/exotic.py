"""Subgroups outside the quaternion family: C_S(E), C_S(E/Z), A and R_{1^5 2}."""

from __future__ import annotations

from itertools import product

import numpy as np

from ..algebra.groups import GenGroup, ResidueMatrixKind
from ..algebra.fields import ResidueCtx
from ..characters import modp
from ..characters.clifford import Automorphism, Presentation
from .forms import QuadraticForm, minus_form_4, q_index, q_vector


class LiftFailed(RuntimeError):
    pass


# GL_3(2) inside GL_3(Z/2^k) -------------------------------------------------

def _mat_mul(a, b, m):
    return (a @ b) % m


def _mat_pow(a, e, m):
    out = np.eye(a.shape[0], dtype=np.int64)
    for _ in range(e):
        out = _mat_mul(out, a, m)
    return out


def _inv_mod(a, m):
    # a has finite order dividing 168 here, so a^-1 = a^(ord-1)
    x, n = a.copy(), 1
    I = np.eye(a.shape[0], dtype=np.int64)
    while not np.array_equal(x, I):
        x = _mat_mul(x, a, m)
        n += 1
    return _mat_pow(a, n - 1, m)


def _relators(x, y, m):
    xy = _mat_mul(x, y, m)
    comm = _mat_mul(_mat_mul(x, y, m), _mat_mul(_inv_mod(x, m), _inv_mod(y, m), m), m)
    return [_mat_pow(x, 2, m), _mat_pow(y, 3, m), _mat_pow(xy, 7, m), _mat_pow(comm, 4, m)]


def _order_mod2(a):
    return _order(a, 2)


def _order(a, m):
    I = np.eye(3, dtype=np.int64)
    x, n = a % m, 1
    while not np.array_equal(x, I):
        x = _mat_mul(x, a, m)
        n += 1
        if n > 200:
            return 0
    return n


def standard_gl32_generators():
    """First (x, y) in lexicographic order with x^2 = y^3 = (xy)^7 = [x,y]^4 = 1."""
    mats = []
    for bits in product((0, 1), repeat=9):
        a = np.array(bits, dtype=np.int64).reshape(3, 3)
        if round(np.linalg.det(a)) % 2:
            mats.append(a)
    invs = [a for a in mats if _order_mod2(a) == 2]
    threes = [a for a in mats if _order_mod2(a) == 3]
    for x in invs:
        for y in threes:
            if _order(_mat_mul(x, y, 2), 2) == 7:
                rel = _relators(x, y, 2)
                if all(np.array_equal(r, np.eye(3, dtype=np.int64)) for r in rel):
                    return x, y
    raise LiftFailed("no standard generators")


def gl32_lift(k: int):
    """Generators of a subgroup of GL_3(Z/2^k) isomorphic to GL_3(2), reducing to
    the standard generators mod 2.  Each step adds 2^j (X, Y) with X, Y solving the
    linearised relator equations over F_2, free variables set to zero."""
    x, y = standard_gl32_generators()
    I = np.eye(3, dtype=np.int64)
    for j in range(1, k):
        m = 1 << (j + 1)
        base = _relators(x, y, m)
        rhs = np.concatenate([((r - I) % m) // (1 << j) for r in base], axis=None) % 2
        cols = []
        for which in range(2):
            for pos in range(9):
                E = np.zeros(9, dtype=np.int64)
                E[pos] = 1
                E = E.reshape(3, 3) << j
                xs, ys = (x + E, y) if which == 0 else (x, y + E)
                rel = _relators(xs % m, ys % m, m)
                diff = [((r - b) % m) // (1 << j) for r, b in zip(rel, base)]
                cols.append(np.concatenate(diff, axis=None) % 2)
        A = np.stack(cols, axis=1)
        aug = np.concatenate([A, rhs[:, None]], axis=1)
        N = modp.nullspace(aug, 2)
        # the basis vector for the free rhs column is the solution with free variables zero
        if N.shape[1] == 0 or N[-1, -1] != 1 or N[-1, :-1].any():
            raise LiftFailed(f"no lift from 2^{j} to 2^{j + 1}")
        z = N[:18, -1]
        # A z + rhs = 0 means relators vanish after subtracting the correction
        X = z[:9].reshape(3, 3) << j
        Y = z[9:].reshape(3, 3) << j
        x, y = (x + X) % m, (y + Y) % m
        if any(not np.array_equal(r, I) for r in _relators(x, y, m)):
            raise LiftFailed("lifted generators fail the relations")
    return x % (1 << k), y % (1 << k)


# T x| H presentations -------------------------------------------------------

def _as_tuple(a):
    return tuple(int(v) for v in np.asarray(a).ravel())


def _as_mat(t, n):
    return np.array(t, dtype=np.int64).reshape(n, n)


def torus_presentation(k: int, group_elems, name: str = "") -> Presentation:
    """T x| H with T = (Z/2^k)^3 and H a finite group of 3x3 matrices (listed elements)."""
    m = 1 << k
    elems = list(group_elems)
    ident = _as_tuple(np.eye(3, dtype=np.int64))
    elems.sort(key=lambda t: (t != ident, t))
    index = {g: i for i, g in enumerate(elems)}
    nq = len(elems)
    mats = [_as_mat(g, 3) for g in elems]
    qmul = np.array([[index[_as_tuple(_mat_mul(a, b, m))] for b in mats] for a in mats])
    M = np.stack(mats)
    f = np.zeros((nq, nq, 3), dtype=np.int64)
    pres = Presentation((m, m, m), qmul, M, f, qnames=[str(i) for i in range(nq)], name=name)
    pres._qelems = elems
    return pres


def torus_automorphism(pres: Presentation, s, k: int) -> Automorphism:
    """Conjugation by a matrix s normalising H."""
    m = 1 << k
    index = {g: i for i, g in enumerate(pres._qelems)}
    si = _inv_mod(s, m)
    pi = np.array([index[_as_tuple(_mat_mul(_mat_mul(s, _as_mat(g, 3), m), si, m))]
                   for g in pres._qelems], dtype=np.int64)
    return Automorphism(np.asarray(s) % m, np.zeros((pres.nq, 3), dtype=np.int64), pi)


def closure_mats(gens, k: int):
    kind = ResidueMatrixKind(ResidueCtx(k), 3)
    G = GenGroup(kind, [_as_tuple(g) for g in gens], cap=1 << 12)
    return G


def cs_e(k: int):
    """C_S(E) = T x| <-I> with Out = GL_3(2) acting through the lift."""
    m = 1 << k
    x, y = gl32_lift(k)
    minus = (-np.eye(3, dtype=np.int64)) % m
    pres = torus_presentation(k, [_as_tuple(np.eye(3, dtype=np.int64)), _as_tuple(minus)], "CS_E")
    auts = [torus_automorphism(pres, g, k) for g in (x, y)]
    return pres, auts


def _stabilizer_s4(G0: GenGroup, kind: str):
    """Point (e1) or line (<e1, e2>) stabiliser in G0, via reduction mod 2."""
    out = []
    for g in G0.elements:
        a = _as_mat(g, 3) % 2
        if kind == "point":
            ok = a[1, 0] == 0 and a[2, 0] == 0
        else:
            ok = a[2, 0] == 0 and a[2, 1] == 0
        if ok:
            out.append(g)
    return out


def _o2_of_stabilizer(S4, kind: str):
    out = []
    for g in S4:
        a = _as_mat(g, 3) % 2
        if kind == "point":
            # trivial on V/<e1>
            ok = a[1, 1] == 1 and a[2, 2] == 1 and a[1, 2] == 0 and a[2, 1] == 0
        else:
            # trivial on <e1, e2>
            ok = a[0, 0] == 1 and a[1, 1] == 1 and a[0, 1] == 0 and a[1, 0] == 0
        if ok:
            out.append(g)
    return out


def cs_ez(k: int, kind: str = "line"):
    """C_S(E/Z) = T x| (<-I> x V4), V4 = O_2 of a point or line stabiliser S4."""
    m = 1 << k
    x, y = gl32_lift(k)
    G0 = closure_mats([x, y], k)
    S4 = _stabilizer_s4(G0, kind)
    V4 = _o2_of_stabilizer(S4, kind)
    if len(S4) != 24 or len(V4) != 4:
        raise LiftFailed("stabiliser has the wrong order")
    minus = (-np.eye(3, dtype=np.int64)) % m
    H = set(V4) | {_as_tuple(_mat_mul(minus, _as_mat(v, 3), m)) for v in V4}
    pres = torus_presentation(k, H, "CS_EZ")
    auts = [torus_automorphism(pres, _as_mat(g, 3), k) for g in S4]
    return pres, auts


# A = F_2^4 with GL_4(2) ------------------------------------------------------

def elementary_abelian(n: int = 4):
    pres = Presentation((2,) * n, np.zeros((1, 1), dtype=np.int64),
                        np.eye(n, dtype=np.int64)[None], np.zeros((1, 1, n), dtype=np.int64), name="A")
    # GL_n(2) is generated by a transvection and the cyclic shift
    t = np.eye(n, dtype=np.int64)
    t[0, 1] = 1
    c = np.roll(np.eye(n, dtype=np.int64), 1, axis=0)
    auts = [Automorphism(g, np.zeros((1, n), dtype=np.int64), np.zeros(1, dtype=np.int64))
            for g in (t, c)]
    return pres, auts


# R_{1^5 2} = 2^(1+4)_- * Q_{2^(l+3)} -----------------------------------------

def r152(l: int):
    """A = <b> (order 2^(l+2)), Q = F_2^4 x <w>; the centre of 2^(1+4)_- is b^(2^(l+1))."""
    form = minus_form_4()
    nb = 1 << (l + 2)
    z = nb // 2
    nq = 32
    vecs = [q_vector(k, 4) for k in range(16)]

    def split(qi):
        return qi >> 1, qi & 1

    qmul = np.zeros((nq, nq), dtype=np.int64)
    f = np.zeros((nq, nq, 1), dtype=np.int64)
    M = np.zeros((nq, 1, 1), dtype=np.int64)
    for i in range(nq):
        u, e = split(i)
        M[i, 0, 0] = (-1) % nb if e else 1
        for j in range(nq):
            v, e2 = split(j)
            w = q_index((vecs[u] + vecs[v]) % 2)
            qmul[i, j] = 2 * w + (e ^ e2)
            beta = int(vecs[u] @ form.beta @ vecs[v]) % 2
            f[i, j, 0] = (z * (beta + e * e2)) % nb
    pres = Presentation((nb,), qmul, M, f, name="R152")
    auts = []
    for g in orthogonal_generators(form):
        images = {}
        for i in range(4):
            e = np.zeros(4, dtype=np.int64)
            e[i] = 1
            images[2 * q_index(e)] = (np.zeros(1, dtype=np.int64), 2 * q_index((g @ e) % 2))
        images[1] = (np.zeros(1, dtype=np.int64), 1)
        aut = pres.automorphism_from_images(np.eye(1, dtype=np.int64), images)
        aut.check(pres)
        auts.append(aut)
    return pres, auts


def orthogonal_generators(form: QuadraticForm):
    """Generators of O(q) found by scanning GL_n(2) (n = 4)."""
    n = form.n
    found = []
    vecs = form.vectors()
    qv = [form(v) for v in vecs]
    for bits in product((0, 1), repeat=n * n):
        g = np.array(bits, dtype=np.int64).reshape(n, n)
        if round(np.linalg.det(g)) % 2 == 0:
            continue
        if all(form((g @ v) % 2) == qv[i] for i, v in enumerate(vecs)):
            found.append(g)
    G = GenGroup(ResidueMatrixKind(ResidueCtx(1), n), [_as_tuple(g) for g in found])
    from ..algebra.groups import _small_generating_set
    gens = _small_generating_set(G.kind, G.elements)
    return [_as_mat(g, n) for g in gens]
