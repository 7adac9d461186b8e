"""The alternating sum w_P(D, 0, d) over chains of elementary abelian 2-subgroups.

w_P(d) = sum over Out-classes of chains sigma = (1 < X_1 < ... < X_m) of
(-1)^m times, for each I(sigma)-orbit of characters of defect d, the number of
2-defect-zero characters of the stabiliser I(sigma, mu).
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass

import numpy as np

from ..algebra.groups import GenGroup, _small_generating_set, elementary_abelian_2subgroups
from ..characters.dixon import dixon_table, v2, z_defect_zero
from .outgroup import OutGroup, label_orbits


@dataclass
class Chain:
    subgroups: tuple      # X_1 < ... < X_m as frozensets of elements
    stabilizer: list      # elements of I(sigma)

    @property
    def length(self) -> int:
        return len(self.subgroups)


def _conj_set(kind, g, E, gi):
    return frozenset(kind.mul(kind.mul(g, x), gi) for x in E)


def chains_up_to_conj(G: GenGroup) -> list[Chain]:
    kind = G.kind
    e = kind.identity()
    subs = [frozenset(E) for E in elementary_abelian_2subgroups(G, up_to_conjugacy=False)]
    subs = [E for E in subs if len(E) > 1]
    out = [Chain((), list(G.elements))]

    def extend(chain: Chain):
        X = chain.subgroups[-1] if chain.subgroups else frozenset([e])
        H = chain.stabilizer
        cands = [E for E in subs if len(E) > len(X) and X < E]
        if not cands:
            return
        gens = _small_generating_set(kind, H) if len(H) > 1 else []
        ginv = [kind.inv(g) for g in gens]
        seen = set()
        for E in sorted(cands, key=lambda s: (len(s), sorted(s))):
            if E in seen:
                continue
            orbit = {E}
            queue = [E]
            while queue:
                F = queue.pop()
                for g, gi in zip(gens, ginv):
                    C = _conj_set(kind, g, F, gi)
                    if C not in orbit:
                        orbit.add(C)
                        queue.append(C)
            seen |= orbit
            stab = [h for h in H if _conj_set(kind, h, E, kind.inv(h)) == E]
            new = Chain(chain.subgroups + (E,), stab)
            out.append(new)
            extend(new)

    extend(out[0])
    return out


class ZCache:
    """z(kG) for permutation groups, keyed by element set."""

    def __init__(self):
        self._memo = {}

    def __call__(self, kind, elems) -> int:
        n = len(elems)
        if n == 1:
            return 1
        n2 = 1 << v2(n)
        if n2 * n2 > n:
            return 0
        key = frozenset(elems)
        if key not in self._memo:
            G = GenGroup(kind, _small_generating_set(kind, list(elems)), cap=n + 1)
            G._elements = list(elems)
            self._memo[key] = z_defect_zero(table=dixon_table(G, max_order=1 << 15))
        return self._memo[key]


def weight_row(out: OutGroup, defects, zcache: ZCache | None = None,
               chains: list[Chain] | None = None) -> dict[int, int]:
    """w_P(d) for every defect d occurring among the labels."""
    zc = zcache or ZCache()
    defects = np.asarray(defects)
    kind = out.kind
    chains = chains if chains is not None else chains_up_to_conj(out.G)
    total = defaultdict(int)
    for d in np.unique(defects):
        total[int(d)] += 0
    for ch in chains:
        sign = -1 if ch.length % 2 else 1
        I = ch.stabilizer
        gens = _small_generating_set(kind, I) if len(I) > 1 else []
        lp = [out.label_perm(g) for g in gens]
        root = label_orbits(lp, out.n_labels)
        reps = np.unique(root)
        imgs = out.images(reps, elems=I)
        mat = np.stack([imgs[g] for g in I]) == reps[None, :]
        cols, inv = np.unique(mat, axis=1, return_inverse=True)
        inv = inv.reshape(-1)
        zs = [zc(kind, [g for g, hit in zip(I, cols[:, j]) if hit]) for j in range(cols.shape[1])]
        contrib = np.array(zs, dtype=np.int64)[inv]
        for d in np.unique(defects[reps]):
            total[int(d)] += sign * int(contrib[defects[reps] == d].sum())
    return dict(sorted(total.items()))
