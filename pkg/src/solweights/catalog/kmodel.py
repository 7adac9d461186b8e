"""The group K as monomial block matrices over F_{q^2}.

An element is (m1, m2, m3, p): three 2x2 blocks (tuples of field indices, see
FieldCtx) and a permutation p of the blocks, standing for the 6x6 matrix
diag(m1, m2, m3) * Pi_p, where Pi_p has identity blocks at (p[j], j).
Elements are stored modulo the centre <(-1,-1,-1)> through a canonical
representative: the smaller of x and -x.
"""

from __future__ import annotations

from functools import cached_property

from ..algebra.fields import field
from ..algebra.groups import FuncKind, GenGroup, MatrixKind
from .params import Params

IDP = (0, 1, 2)
TAU = (1, 0, 2)
GAMMA = (0, 2, 1)


def _pcomp(p, r):
    return (p[r[0]], p[r[1]], p[r[2]])


def _pinv(p):
    out = [0, 0, 0]
    for j, k in enumerate(p):
        out[k] = j
    return tuple(out)


class BlockOps:
    """2x2 matrices over F_{q^2}."""

    def __init__(self, F):
        self.F = F
        one = F.from_int(1)
        self.I = (one, 0, 0, one)

    def mul(self, a, b):
        F = self.F
        m, ad = F.mul, F.add
        return (ad(m(a[0], b[0]), m(a[1], b[2])), ad(m(a[0], b[1]), m(a[1], b[3])),
                ad(m(a[2], b[0]), m(a[3], b[2])), ad(m(a[2], b[1]), m(a[3], b[3])))

    def inv(self, a):
        # determinant one throughout
        F = self.F
        return (a[3], F.neg(a[1]), F.neg(a[2]), a[0])

    def neg(self, a):
        F = self.F
        return tuple(F.neg(x) for x in a)

    def det(self, a):
        F = self.F
        return F.sub(F.mul(a[0], a[3]), F.mul(a[1], a[2]))

    def power(self, a, k):
        out, base = self.I, a
        if k < 0:
            base, k = self.inv(a), -k
        while k:
            if k & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            k >>= 1
        return out


class KModel:
    def __init__(self, params: Params):
        self.params = params
        self.F = F = field(params.q)
        self.B = B = BlockOps(F)
        l = params.l
        self.n_a = 1 << (l + 3)
        lam = F.root_of_unity(self.n_a)
        self.lam = lam
        self.a = (lam, 0, 0, F.inv(lam))
        one = F.from_int(1)
        self.w = (0, one, F.neg(one), 0)
        self.i = B.power(self.a, 1 << (l + 1))
        self.t = B.power(self.a, 1 << l)
        self.y = self._triality()
        self.ident = (B.I, B.I, B.I, IDP)
        self.kind = FuncKind(self.mul, self.inv, self.ident)

    def _triality(self):
        # y = -(1 + i + j + k)/2 in the quaternion algebra spanned by i, w
        F, B = self.F, self.B
        i, j = self.i, self.w
        k = B.mul(i, j)
        half = F.inv(F.from_int(2))
        s = tuple(F.add(F.add(x0, x1), F.add(x2, x3)) for x0, x1, x2, x3 in zip(B.I, i, j, k))
        y = tuple(F.neg(F.mul(half, v)) for v in s)
        if B.power(y, 3) != B.I or B.det(y) != B.I[0]:
            raise RuntimeError("triality element has wrong order")
        return y

    # group law ------------------------------------------------------------
    def canon(self, x):
        neg = (self.B.neg(x[0]), self.B.neg(x[1]), self.B.neg(x[2]), x[3])
        return min(x, neg)

    def mul(self, x, y):
        B = self.B
        p = x[3]
        shifted = [None, None, None]
        for j in range(3):
            shifted[p[j]] = y[j]
        return self.canon((B.mul(x[0], shifted[0]), B.mul(x[1], shifted[1]),
                           B.mul(x[2], shifted[2]), _pcomp(p, y[3])))

    def inv(self, x):
        B = self.B
        p = x[3]
        mi = [B.inv(x[j]) for j in range(3)]
        return self.canon((mi[p[0]], mi[p[1]], mi[p[2]], _pinv(p)))

    def conj(self, g, x):
        return self.mul(self.mul(g, x), self.inv(g))

    def block(self, j, m):
        out = [self.B.I] * 3
        out[j] = m
        return self.canon((out[0], out[1], out[2], IDP))

    def diag(self, m1, m2, m3, p=IDP):
        return self.canon((m1, m2, m3, p))

    def perm(self, p):
        return (self.B.I, self.B.I, self.B.I, p)

    @cached_property
    def c(self):
        return self.diag(self.a, self.a, self.a)

    @property
    def tau(self):
        return self.perm(TAU)

    @property
    def gamma(self):
        return self.perm(GAMMA)

    def apow(self, k):
        return self.B.power(self.a, k)

    # 6x6 export -------------------------------------------------------------
    def to_matrix(self, x):
        """Flattened 6x6 matrix (field indices) of the representative x."""
        M = [[0] * 6 for _ in range(6)]
        p = x[3]
        for j in range(3):
            r = p[j]
            blk = x[r]
            for u in range(2):
                for v in range(2):
                    M[2 * r + u][2 * j + v] = blk[2 * u + v]
        return tuple(v for row in M for v in row)

    def matrix_kind(self) -> MatrixKind:
        return MatrixKind(self.F, 6)

    def sl2_generators(self):
        F = self.F
        one = F.from_int(1)
        return [(one, one, 0, one), self.w]

    def generators(self):
        """Generators of K: SL2(q) in each block, the diagonal c, tau and gamma."""
        gens = [self.block(j, m) for j in range(3) for m in self.sl2_generators()]
        return gens + [self.c, self.tau, self.gamma]

    def order_of(self, x) -> int:
        return self.kind.order(x)

    def group(self, generators, cap=1 << 22) -> GenGroup:
        return GenGroup(self.kind, generators, cap=cap)


def build_K(params: Params) -> KModel:
    return KModel(params)
