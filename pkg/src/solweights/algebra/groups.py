"""Finite groups given by generators, enumerated by breadth-first closure.

Elements are plain hashable tuples; a ``Kind`` object supplies the
multiplication for one payload family (matrices over F_{q^2}, matrices over
Z/2^k, permutations, vector/matrix pairs).  Canonical encodings are the tuples
themselves, so "minimum" always means lexicographic order on tuples.
"""

from __future__ import annotations

from collections import deque
from itertools import combinations
from typing import Callable, Hashable, Iterable, Sequence

from .fields import FieldCtx, ResidueCtx

Elem = tuple

DEFAULT_CAP = 1 << 23


class CapExceeded(RuntimeError):
    pass


class ParentTooLarge(RuntimeError):
    pass


class NotCentral(ValueError):
    pass


class Kind:
    """Multiplication for one payload family."""

    def mul(self, a: Elem, b: Elem) -> Elem:
        raise NotImplementedError

    def inv(self, a: Elem) -> Elem:
        raise NotImplementedError

    def identity(self) -> Elem:
        raise NotImplementedError

    def conj(self, g: Elem, x: Elem) -> Elem:
        """g x g^-1"""
        return self.mul(self.mul(g, x), self.inv(g))

    def power(self, a: Elem, k: int) -> Elem:
        result = self.identity()
        if k < 0:
            a, k = self.inv(a), -k
        while k:
            if k & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            k >>= 1
        return result

    def order(self, a: Elem) -> int:
        e = self.identity()
        x, n = a, 1
        while x != e:
            x = self.mul(x, a)
            n += 1
        return n


class MatrixKind(Kind):
    """Square matrices over F_{q^2}; entries are field indices (see FieldCtx)."""

    def __init__(self, F: FieldCtx, dim: int):
        self.F = F
        self.dim = dim

    def identity(self) -> Elem:
        d = self.dim
        return tuple(1 if i == j else 0 for i in range(d) for j in range(d))

    def mul(self, a, b):
        F, d = self.F, self.dim
        out = []
        for i in range(d):
            row = a[i * d:(i + 1) * d]
            for j in range(d):
                s = 0
                for k in range(d):
                    x = row[k]
                    if x:
                        y = b[k * d + j]
                        if y:
                            s = F.add(s, F.mul(x, y))
                out.append(s)
        return tuple(out)

    def inv(self, a):
        F, d = self.F, self.dim
        if d == 2:
            det = F.sub(F.mul(a[0], a[3]), F.mul(a[1], a[2]))
            di = F.inv(det)
            return (F.mul(a[3], di), F.mul(F.neg(a[1]), di), F.mul(F.neg(a[2]), di), F.mul(a[0], di))
        # Gauss-Jordan
        m = [list(a[i * d:(i + 1) * d]) + [1 if i == j else 0 for j in range(d)] for i in range(d)]
        for c in range(d):
            r = next(r for r in range(c, d) if m[r][c])
            m[c], m[r] = m[r], m[c]
            iv = F.inv(m[c][c])
            m[c] = [F.mul(x, iv) for x in m[c]]
            for r in range(d):
                if r != c and m[r][c]:
                    f = m[r][c]
                    m[r] = [F.sub(x, F.mul(f, y)) for x, y in zip(m[r], m[c])]
        return tuple(x for row in m for x in row[d:])

    def det(self, a) -> int:
        F, d = self.F, self.dim
        m = [list(a[i * d:(i + 1) * d]) for i in range(d)]
        det = 1
        for c in range(d):
            piv = next((r for r in range(c, d) if m[r][c]), None)
            if piv is None:
                return 0
            if piv != c:
                m[c], m[piv] = m[piv], m[c]
                det = F.neg(det)
            det = F.mul(det, m[c][c])
            iv = F.inv(m[c][c])
            for r in range(c + 1, d):
                if m[r][c]:
                    f = F.mul(m[r][c], iv)
                    m[r] = [F.sub(x, F.mul(f, y)) for x, y in zip(m[r], m[c])]
        return det

    def from_ints(self, rows: Sequence[Sequence[int]]) -> Elem:
        return tuple(self.F.from_int(x) for row in rows for x in row)


class ResidueMatrixKind(Kind):
    """Square matrices over Z/2^k, entries as integers in [0, 2^k)."""

    def __init__(self, R: ResidueCtx, dim: int):
        self.R = R
        self.dim = dim

    def identity(self):
        d = self.dim
        return tuple(1 if i == j else 0 for i in range(d) for j in range(d))

    def mul(self, a, b):
        d, m = self.dim, self.R.mod
        return tuple(
            sum(a[i * d + k] * b[k * d + j] for k in range(d)) % m
            for i in range(d) for j in range(d)
        )

    def inv(self, a):
        # the group is finite, so a^-1 = a^(ord-1)
        x, prev = a, self.identity()
        e = self.identity()
        while x != e:
            prev = x
            x = self.mul(x, a)
        return prev

    def apply(self, a, v: Sequence[int]) -> tuple:
        d, m = self.dim, self.R.mod
        return tuple(sum(a[i * d + k] * v[k] for k in range(d)) % m for i in range(d))


class PermKind(Kind):
    """Permutations of range(n) as image tuples; (a*b)(i) = a(b(i))."""

    def __init__(self, n: int):
        self.n = n

    def identity(self):
        return tuple(range(self.n))

    def mul(self, a, b):
        return tuple(a[i] for i in b)

    def inv(self, a):
        out = [0] * len(a)
        for i, j in enumerate(a):
            out[j] = i
        return tuple(out)


class SemidirectKind(Kind):
    """Pairs (v, M) in (Z/2^k)^n ⋊ G with (v, M)(w, N) = (v + M w, M N)."""

    def __init__(self, mats: ResidueMatrixKind):
        self.mats = mats

    def identity(self):
        return ((0,) * self.mats.dim, self.mats.identity())

    def mul(self, a, b):
        v, M = a
        w, N = b
        mw = self.mats.apply(M, w)
        m = self.mats.R.mod
        return (tuple((x + y) % m for x, y in zip(v, mw)), self.mats.mul(M, N))

    def inv(self, a):
        v, M = a
        Mi = self.mats.inv(M)
        w = self.mats.apply(Mi, v)
        m = self.mats.R.mod
        return (tuple((-x) % m for x in w), Mi)


class FuncKind(Kind):
    """Kind built from plain functions (used for quotient and model groups)."""

    def __init__(self, mul: Callable, inv: Callable, identity: Elem):
        self._mul, self._inv, self._id = mul, inv, identity

    def mul(self, a, b):
        return self._mul(a, b)

    def inv(self, a):
        return self._inv(a)

    def identity(self):
        return self._id


def closure(kind: Kind, generators: Iterable[Elem], cap: int = DEFAULT_CAP) -> list[Elem]:
    """Breadth-first closure; layers are sorted so the order is canonical."""
    gens = sorted(set(generators))
    e = kind.identity()
    seen = {e}
    out = [e]
    layer = [e]
    while layer:
        nxt = set()
        for x in layer:
            for g in gens:
                y = kind.mul(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.add(y)
        if len(seen) > cap:
            raise CapExceeded(f"closure exceeded {cap} elements")
        layer = sorted(nxt)
        out.extend(layer)
    return out


class GenGroup:
    """A finitely generated group with lazily cached enumeration and classes."""

    def __init__(self, kind: Kind, generators: Iterable[Elem], cap: int = DEFAULT_CAP,
                 elements: list[Elem] | None = None):
        self.kind = kind
        self.generators = sorted(set(generators))
        self.cap = cap
        self._elements = elements
        self._index = None
        self._classes = None

    # enumeration -----------------------------------------------------------
    @property
    def elements(self) -> list[Elem]:
        if self._elements is None:
            self._elements = closure(self.kind, self.generators, self.cap)
        return self._elements

    @property
    def index(self) -> dict:
        if self._index is None:
            self._index = {x: i for i, x in enumerate(self.elements)}
        return self._index

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, x) -> bool:
        return x in self.index

    def identity(self):
        return self.kind.identity()

    def mul(self, a, b):
        return self.kind.mul(a, b)

    def inv(self, a):
        return self.kind.inv(a)

    def subgroup(self, generators: Iterable[Elem]) -> "GenGroup":
        return GenGroup(self.kind, generators, self.cap)

    def subgroup_from_elements(self, elems: Iterable[Elem]) -> "GenGroup":
        els = sorted(set(elems))
        H = GenGroup(self.kind, els, self.cap)
        H._elements = closure(self.kind, _small_generating_set(self.kind, els), self.cap)
        return H

    # conjugacy -------------------------------------------------------------
    @property
    def classes(self) -> list[list[Elem]]:
        """Conjugacy classes, each sorted; ordered by their minimal element."""
        if self._classes is None:
            kind, gens = self.kind, self.generators
            ginv = [kind.inv(g) for g in gens]
            seen = set()
            classes = []
            for x in self.elements:
                if x in seen:
                    continue
                orbit = {x}
                queue = [x]
                while queue:
                    y = queue.pop()
                    for g, gi in zip(gens, ginv):
                        z = kind.mul(kind.mul(g, y), gi)
                        if z not in orbit:
                            orbit.add(z)
                            queue.append(z)
                seen |= orbit
                classes.append(sorted(orbit))
            classes.sort(key=lambda c: c[0])
            self._classes = classes
        return self._classes

    @property
    def class_of(self) -> dict:
        if not hasattr(self, "_class_of"):
            self._class_of = {x: i for i, c in enumerate(self.classes) for x in c}
        return self._class_of

    def center(self) -> list[Elem]:
        return sorted(c[0] for c in self.classes if len(c) == 1)

    def centralizer(self, g: Elem) -> "GenGroup":
        kind = self.kind
        els = [x for x in self.elements if kind.mul(x, g) == kind.mul(g, x)]
        return self.subgroup_from_elements(els)

    def derived_subgroup(self) -> "GenGroup":
        kind = self.kind
        gens = self.generators
        comms = set()
        for a in gens:
            for b in gens:
                comms.add(kind.mul(kind.mul(a, b), kind.mul(kind.inv(a), kind.inv(b))))
        # normal closure of the generator commutators
        D = closure(kind, comms, self.cap)
        Dset = set(D)
        changed = True
        while changed:
            changed = False
            for g in gens:
                for x in list(Dset):
                    y = kind.conj(g, x)
                    if y not in Dset:
                        comms.add(y)
                        changed = True
                if changed:
                    D = closure(kind, comms, self.cap)
                    Dset = set(D)
                    break
        H = GenGroup(kind, comms, self.cap)
        H._elements = D
        return H

    def is_normal(self, H: "GenGroup") -> bool:
        Hs = set(H.elements)
        return all(self.kind.conj(g, h) in Hs for g in self.generators for h in H.generators)

    def exponent(self) -> int:
        from math import lcm
        e = 1
        for c in self.classes:
            e = lcm(e, self.kind.order(c[0]))
        return e


def _small_generating_set(kind: Kind, elems: Sequence[Elem]) -> list[Elem]:
    target = len(elems)
    gens: list[Elem] = []
    current = {kind.identity()}
    for x in elems:
        if x in current:
            continue
        gens.append(x)
        current = set(closure(kind, gens))
        if len(current) == target:
            break
    return gens


def normalizer_in(parent: GenGroup | None, H: GenGroup,
                  candidates: Iterable[Elem] | None = None,
                  max_parent: int = 1 << 16) -> GenGroup:
    """Largest subgroup of the searched set normalizing H.

    With ``candidates`` the result is generated by those candidates that
    normalize H (membership is tested on H's generators only).
    """
    kind = H.kind
    Hs = set(H.elements)

    def normalizes(g):
        return all(kind.conj(g, h) in Hs for h in H.generators)

    if candidates is not None:
        good = [g for g in candidates if normalizes(g)]
        return GenGroup(kind, good + list(H.generators))
    if parent is None or (parent._elements is None and parent.cap > max_parent):
        raise ParentTooLarge("parent not enumerable; supply candidates")
    if parent.order > max_parent:
        raise ParentTooLarge(f"parent of order {parent.order} exceeds {max_parent}")
    return parent.subgroup_from_elements(g for g in parent.elements if normalizes(g))


def quotient_by_central(G: GenGroup, Z: Sequence[Elem]):
    """G/Z for a central subgroup Z. Returns (quotient, section map).

    Quotient elements are the minimal representatives of the cosets.
    """
    kind = G.kind
    Zl = sorted(set(Z))
    for z in Zl:
        if any(kind.mul(z, g) != kind.mul(g, z) for g in G.generators):
            raise NotCentral("subgroup is not central")

    def canon(x):
        return min(kind.mul(x, z) for z in Zl)

    qkind = FuncKind(lambda a, b: canon(kind.mul(a, b)), lambda a: canon(kind.inv(a)),
                     canon(kind.identity()))
    gens = sorted({canon(g) for g in G.generators})
    Q = GenGroup(qkind, gens, G.cap)
    return Q, canon


def elementary_abelian_2subgroups(G: GenGroup, up_to_conjugacy: bool = True):
    """Elementary abelian 2-subgroups of G (as sorted element tuples).

    Returns a list of (subgroup, normalizer) with one representative per
    G-class when ``up_to_conjugacy``; the trivial subgroup comes first.
    """
    kind = G.kind
    e = kind.identity()
    invols = [x for x in G.elements if x != e and kind.mul(x, x) == e]
    found = {(e,)}
    frontier = [(e,)]
    while frontier:
        nxt = []
        for E in frontier:
            Es = set(E)
            for t in invols:
                if t in Es:
                    continue
                if all(kind.mul(t, y) == kind.mul(y, t) for y in E):
                    new = tuple(sorted(Es | {kind.mul(t, y) for y in E}))
                    if new not in found:
                        found.add(new)
                        nxt.append(new)
        frontier = nxt
    subs = sorted(found, key=lambda E: (len(E), E))
    if not up_to_conjugacy:
        return subs
    reps = []
    seen = set()
    for E in subs:
        if E in seen:
            continue
        orbit = {E}
        queue = [E]
        while queue:
            F = queue.pop()
            for g in G.generators:
                C = tuple(sorted(kind.conj(g, y) for y in F))
                if C not in orbit:
                    orbit.add(C)
                    queue.append(C)
        seen |= orbit
        Es = set(E)
        N = G.subgroup_from_elements(
            g for g in G.elements if all(kind.conj(g, y) in Es for y in E))
        reps.append((E, N))
    return reps


def is_abelian(kind: Kind, gens: Sequence[Elem]) -> bool:
    return all(kind.mul(a, b) == kind.mul(b, a) for a, b in combinations(gens, 2))
