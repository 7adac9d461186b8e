"""Labeled irreducible characters: generalised quaternion groups, little groups, and
the action of automorphisms on labels."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from ..algebra.groups import FuncKind, GenGroup
from . import modp
from .dixon import ClassFunction, CharTable, dixon_table, table_prime


class ExtensionHypothesisFails(ValueError):
    pass


# label types ---------------------------------------------------------------

@dataclass(frozen=True, order=True)
class QuaternionLinear:
    index: int          # bit 0: sign on a, bit 1: sign on b


@dataclass(frozen=True, order=True)
class QuaternionPsi:
    u: int
    t: int


@dataclass(frozen=True, order=True)
class TensorProduct:
    factors: tuple


@dataclass(frozen=True, order=True)
class LittleGroups:
    orbit: int          # index of the orbit representative theta in Irr(G0)
    beta: int           # index of beta among the linear characters of I_G(theta)/G0


@dataclass(frozen=True, order=True)
class Lift:
    label: object


@dataclass(frozen=True, order=True)
class AbelianHom:
    exponents: tuple


CharLabel = QuaternionLinear | QuaternionPsi | TensorProduct | LittleGroups | Lift | AbelianHom


class LabeledIrr:
    """Irr(G) as value vectors on G.classes, each carrying a symbolic label."""

    def __init__(self, G: GenGroup, prime: int, labels, chars: list[ClassFunction]):
        self.G = G
        self.prime = prime
        self.labels = list(labels)
        self.chars = list(chars)
        self._by_key = {c.key(): i for i, c in enumerate(self.chars)}
        self._by_label = {lab: i for i, lab in enumerate(self.labels)}

    def __len__(self):
        return len(self.chars)

    def resolve(self, label) -> ClassFunction:
        return self.chars[self._by_label[label]]

    def index_of_values(self, values) -> int:
        return self._by_key[tuple(int(v) for v in values)]

    @property
    def degrees(self) -> list[int]:
        return [c.degree for c in self.chars]

    def histogram(self) -> dict[int, int]:
        from .dixon import defect_histogram
        return defect_histogram(self.degrees, self.G.order)

    def class_permutation(self, alpha: Callable) -> list[int]:
        """pi with alpha(C_i) = C_pi[i]."""
        cls = self.G.class_of
        return [cls[alpha(c[0])] for c in self.G.classes]

    def permutation(self, alpha: Callable) -> list[int]:
        """perm[k] = index of chi_k^alpha, where chi^alpha(g) = chi(alpha^-1(g))."""
        pi = self.class_permutation(alpha)
        out = []
        for c in self.chars:
            v = np.empty_like(c.values)
            v[pi] = c.values
            out.append(self.index_of_values(v))
        return out

    def act(self, alpha: Callable, k):
        """act_on_irr on a label or an index; returns the same kind."""
        if isinstance(k, (int, np.integer)):
            return self.permutation(alpha)[int(k)]
        return self.labels[self.permutation(alpha)[self._by_label[k]]]

    def matches(self, table: CharTable) -> bool:
        if table.prime != self.prime:
            raise ValueError("tables use different primes")
        return sorted(c.key() for c in table.characters) == sorted(c.key() for c in self.chars)


def act_on_irr(alpha: Callable, irr: LabeledIrr, chi):
    return irr.act(alpha, chi)


# generalised quaternion groups ------------------------------------------------

def quaternion_group(l: int) -> GenGroup:
    """Q_{2^(l+3)} on pairs (k, e) meaning a^k b^e."""
    n = 1 << (l + 2)
    half = n // 2

    def mul(x, y):
        k1, e1 = x
        k2, e2 = y
        k = k1 + (-k2 if e1 else k2) + (half if e1 and e2 else 0)
        return (k % n, e1 ^ e2)

    def inv(x):
        k, e = x
        return ((-k) % n, 0) if e == 0 else ((k + half) % n, 1)

    kind = FuncKind(mul, inv, (0, 0))
    return GenGroup(kind, [(1, 0), (0, 1)])


def quaternion_labels(l: int) -> list:
    labs = [QuaternionLinear(i) for i in range(4)]
    for u in range(l + 1):
        labs += [QuaternionPsi(u, t) for t in range(1, 1 << (u + 1), 2)]
    return labs


def quaternion_irr(l: int, prime: int | None = None) -> LabeledIrr:
    """Irr(Q_{2^(l+3)}) from the closed formulas; psi_{u,t}(a^i) = w^(2^(l-u) t i) + w^-(...)."""
    G = quaternion_group(l)
    n = 1 << (l + 2)
    P = prime or table_prime(G)
    w = modp.root_of_unity(P, n)
    reps = [c[0] for c in G.classes]
    chars = []
    labels = quaternion_labels(l)
    for lab in labels:
        vals = []
        for k, e in reps:
            if isinstance(lab, QuaternionLinear):
                sa = -1 if lab.index & 1 else 1
                sb = -1 if lab.index & 2 else 1
                vals.append((sa ** k) * (sb ** e) % P)
            elif e:
                vals.append(0)
            else:
                s = (1 << (l - lab.u)) * lab.t * k
                vals.append((pow(w, s % n, P) + pow(w, (-s) % n, P)) % P)
        deg = 1 if isinstance(lab, QuaternionLinear) else 2
        chars.append(ClassFunction(deg, np.array(vals, dtype=np.int64)))
    return LabeledIrr(G, P, labels, chars)


def centre_not_in_kernel(irr: LabeledIrr, l: int) -> list:
    z = (1 << (l + 1), 0)
    zc = irr.G.class_of[z]
    return [lab for lab, c in zip(irr.labels, irr.chars) if int(c.values[zc]) != c.degree % irr.prime]


# little groups -------------------------------------------------------------------

def _restrict(G: GenGroup, H: GenGroup, chi: ClassFunction) -> np.ndarray:
    return np.array([chi.values[G.class_of[c[0]]] for c in H.classes], dtype=np.int64)


def _extend_to_G(G: GenGroup, H: GenGroup, vals_on_H, P) -> np.ndarray:
    """Induce a class function of H to G, mod P."""
    kind = G.kind
    Hcls = H.class_of
    inv_h = pow(H.order, -1, P)
    out = []
    for c in G.classes:
        g = c[0]
        tot = 0
        for x in G.elements:
            y = kind.mul(kind.mul(x, g), kind.inv(x))
            if y in Hcls:
                tot += int(vals_on_H[Hcls[y]])
        out.append(tot * inv_h % P)
    return np.array(out, dtype=np.int64)


def little_groups_irr(G: GenGroup, G0: GenGroup, prime: int | None = None) -> LabeledIrr:
    """Irr(G) as (beta theta^)^G over G-orbit representatives theta of Irr(G0); I_G(theta)/G0 cyclic."""
    P = prime or table_prime(G)
    if G0.order == G.order:
        t0 = dixon_table(G0, prime=P)
        return LabeledIrr(G, P, [Lift(i) for i in range(len(t0.characters))], t0.characters)
    t0 = dixon_table(G0, prime=P)
    kind = G.kind
    chars0 = t0.characters
    key0 = {c.key(): i for i, c in enumerate(chars0)}

    def conj_index(g, i):
        # theta^g(h) = theta(g^-1 h g)
        gi = kind.inv(g)
        vals = [chars0[i].values[G0.class_of[kind.mul(kind.mul(gi, c[0]), g)]] for c in G0.classes]
        return key0[tuple(int(v) for v in vals)]

    done, labels, out = set(), [], []
    for i in range(len(chars0)):
        if i in done:
            continue
        orbit = {conj_index(g, i) for g in G.generators} | {i}
        frontier = list(orbit)
        while frontier:
            j = frontier.pop()
            for g in G.generators:
                k = conj_index(g, j)
                if k not in orbit:
                    orbit.add(k)
                    frontier.append(k)
        done |= orbit
        inert = [g for g in G.elements if conj_index(g, i) == i]
        I = G.subgroup_from_elements(inert)
        tI = dixon_table(I, prime=P)
        theta = chars0[i]
        ext = [c for c in tI.characters if c.degree == theta.degree
               and np.array_equal(_restrict(I, G0, c), theta.values)]
        if not ext:
            raise ExtensionHypothesisFails("theta does not extend to its inertia group")
        hat = min(ext, key=lambda c: c.key())
        betas = [c for c in tI.characters if c.degree == 1
                 and all(int(v) == 1 for v in _restrict(I, G0, c))]
        betas.sort(key=lambda c: c.key())
        for bi, beta in enumerate(betas):
            vals_I = beta.values * hat.values % P
            vals = _extend_to_G(G, I, vals_I, P)
            deg = (G.order // I.order) * theta.degree
            labels.append(LittleGroups(i, bi))
            out.append(ClassFunction(deg, vals))
    return LabeledIrr(G, P, labels, out)
