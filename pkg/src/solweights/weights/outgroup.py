"""Out-groups as permutation groups on labelled irreducible characters.

When P is radical, Out(P) acts faithfully on Irr(P): an automorphism fixing
every irreducible character is class preserving, class-preserving
automorphisms of a 2-group form a 2-group, and O_2(Out(P)) = 1.  So Out(P)
can be taken to be the group its generators induce on the labels.  A small
union of orbits on which this group still acts faithfully serves as the
working domain.
"""

from __future__ import annotations

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components
from sympy.combinatorics import Permutation, PermutationGroup

from ..algebra.groups import GenGroup, PermKind


class NotFaithful(RuntimeError):
    pass


def label_orbits(perms, n: int) -> np.ndarray:
    """Orbit id (smallest member) of every label under the given permutations."""
    if not perms:
        return np.arange(n)
    rows = np.concatenate([np.arange(n)] * len(perms))
    cols = np.concatenate([np.asarray(p) for p in perms])
    graph = coo_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(n, n))
    _, comp = connected_components(graph, directed=True, connection="weak")
    first = np.full(comp.max() + 1, n, dtype=np.int64)
    np.minimum.at(first, comp, np.arange(n))
    return first[comp]


class OutGroup:
    def __init__(self, label_perms, n_labels: int, order: int | None = None, names=None):
        self.n_labels = n_labels
        self.label_perms = [np.asarray(p, dtype=np.int64) for p in label_perms]
        self.names = names or [f"g{i}" for i in range(len(self.label_perms))]
        gens, group = _prune(self.label_perms, n_labels)
        self._gens = gens
        self.order = int(order if order is not None else (group.order() if gens else 1))
        self.domain = self._faithful_domain()
        pos = {x: i for i, x in enumerate(self.domain)}
        self._pos = pos
        dom = np.array(self.domain, dtype=np.int64)
        self.kind = PermKind(len(self.domain))
        self.gen_elems = [tuple(pos[int(v)] for v in p[dom]) for p in gens]
        self.G = GenGroup(self.kind, self.gen_elems, cap=max(self.order, 1) + 1)
        if self.G.order != self.order:
            raise NotFaithful("restricted action lost elements")
        self._tree()

    def _faithful_domain(self):
        if self.order == 1:
            return [0]
        root = label_orbits(self._gens, self.n_labels)
        reps, sizes = np.unique(root, return_counts=True)
        order = np.argsort(sizes, kind="stable")
        domain = []
        current = 1
        for k in order:
            if sizes[k] == 1:
                continue
            trial = domain + np.nonzero(root == reps[k])[0].tolist()
            dom = np.array(trial)
            restricted = [Permutation(_restrict(p, dom)) for p in self._gens]
            n = PermutationGroup(restricted).order()
            if n > current:
                domain, current = trial, n
            if current == self.order:
                return domain
        raise NotFaithful("no faithful union of orbits found")

    def _tree(self):
        """BFS words: every element g = gens[s] * parent."""
        kind, G = self.kind, self.G
        e = kind.identity()
        self.parent = {e: None}
        order = [e]
        layer = [e]
        while layer:
            nxt = []
            for x in layer:
                for s, g in enumerate(self.gen_elems):
                    y = kind.mul(g, x)
                    if y not in self.parent:
                        self.parent[y] = (x, s)
                        order.append(y)
                        nxt.append(y)
            layer = nxt
        self.bfs = order
        self._gens_full = [p for p in self._gens]

    def images(self, points: np.ndarray, elems=None) -> dict:
        """Images of label points under each element (dict element -> array)."""
        pts = np.asarray(points, dtype=np.int64)
        out = {}
        want = None if elems is None else set(elems)
        for g in self.bfs:
            par = self.parent[g]
            if par is None:
                out[g] = pts
            else:
                x, s = par
                out[g] = self._gens_full[s][out[x]]
        if want is not None:
            out = {g: v for g, v in out.items() if g in want}
        return out

    def label_perm(self, g) -> np.ndarray:
        path = []
        while self.parent[g] is not None:
            x, s = self.parent[g]
            path.append(s)
            g = x
        out = np.arange(self.n_labels)
        for s in reversed(path):
            out = self._gens_full[s][out]
        return out


def _prune(perms, n):
    """Drop identities, repeats and generators already in the span of earlier ones."""
    ident = np.arange(n)
    seen = set()
    kept = []
    group = None
    for p in perms:
        if np.array_equal(p, ident):
            continue
        key = p.tobytes()
        if key in seen:
            continue
        seen.add(key)
        perm = Permutation(p.tolist())
        if group is not None and group.contains(perm):
            continue
        kept.append(p)
        group = PermutationGroup([Permutation(k.tolist()) for k in kept])
    return kept, group


def _restrict(p, dom):
    pos = {int(x): i for i, x in enumerate(dom)}
    return [pos[int(v)] for v in p[dom]]
