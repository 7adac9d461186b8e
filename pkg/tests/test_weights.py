from collections import defaultdict
from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest

from conftest import perm_from_cycles
from solweights.algebra.groups import closure
from solweights.catalog.params import Params
from solweights.weights import api
from solweights.weights.engine import ZCache, chains_up_to_conj, weight_row
from solweights.weights.outgroup import OutGroup


def _brute_weight_row(out: OutGroup, defects):
    """Sum over every chain (no conjugacy reduction), weighted by |I(sigma, mu)| / |G|."""
    G = out.G
    kind = G.kind
    e = kind.identity()
    inv = [g for g in G.elements if g != e and kind.mul(g, g) == e]
    subs = set()
    for r in (1, 2, 3, 4):
        for gens in combinations(inv, r):
            if all(kind.mul(a, b) == kind.mul(b, a) for a, b in combinations(gens, 2)):
                subs.add(frozenset(closure(kind, gens)))
    subs = sorted(subs, key=len)
    chains = [()]
    frontier = [()]
    while frontier:
        nxt = []
        for ch in frontier:
            top = ch[-1] if ch else frozenset([e])
            for E in subs:
                if top < E:
                    nxt.append(ch + (E,))
        chains += nxt
        frontier = nxt
    perms = {g: out.label_perm(g) for g in G.elements}
    zc = ZCache()
    total = defaultdict(Fraction)
    for d in set(int(x) for x in defects):
        total[d] += 0
    for ch in chains:
        sign = -1 if len(ch) % 2 else 1
        I = [g for g in G.elements
             if all(frozenset(kind.mul(kind.mul(g, x), kind.inv(g)) for x in E) == E for E in ch)]
        for mu, d in enumerate(defects):
            stab = [g for g in I if perms[g][mu] == mu]
            total[int(d)] += Fraction(sign * zc(kind, stab) * len(stab), G.order)
    assert all(v.denominator == 1 for v in total.values())
    return {d: int(v) for d, v in sorted(total.items())}


def _s3_on_four_labels():
    return OutGroup([(1, 0, 2, 3), (1, 2, 0, 3)], 4)


def test_trivial_out_gives_histogram():
    defects = [3, 3, 2, 5, 3]
    out = OutGroup([], len(defects))
    assert len(chains_up_to_conj(out.G)) == 1
    assert weight_row(out, defects) == {2: 1, 3: 3, 5: 1}


def test_s3_by_hand():
    # chains: () and (C2); three permuted labels give 0 - 1, the fixed one 1 - 0
    out = _s3_on_four_labels()
    assert out.order == 6
    assert len(chains_up_to_conj(out.G)) == 2
    assert weight_row(out, [5, 5, 5, 2]) == {2: 1, 5: -1}


def _s4_on_points_and_pairs():
    pairs = list(combinations(range(4), 2))

    def act(p):
        img = list(p)
        for a, b in pairs:
            img.append(4 + pairs.index(tuple(sorted((p[a], p[b])))))
        return tuple(img)

    gens = [perm_from_cycles(4, (0, 1)), perm_from_cycles(4, (0, 1, 2, 3))]
    return OutGroup([act(g) for g in gens], 10)


def _gl32_on_points_and_lines(gl32_perm):
    lines = sorted({frozenset(closure_line) for closure_line in
                    [(0, 1, 3), (1, 2, 4), (2, 3, 5), (3, 4, 6), (4, 5, 0), (5, 6, 1), (6, 0, 2)]},
                   key=sorted)

    def act(p):
        img = list(p)
        for L in lines:
            img.append(7 + lines.index(frozenset(p[i] for i in L)))
        return tuple(img)

    return OutGroup([act(g) for g in gl32_perm.generators], 14)


@pytest.mark.parametrize("defects", [[1] * 4 + [2] * 6, [0, 1, 2, 3, 4, 0, 1, 2, 3, 4]])
def test_engine_against_all_chains_s4(defects):
    out = _s4_on_points_and_pairs()
    assert out.order == 24
    assert weight_row(out, defects) == _brute_weight_row(out, defects)


def test_engine_against_all_chains_gl32(gl32_perm):
    out = _gl32_on_points_and_lines(gl32_perm)
    assert out.order == 168
    defects = [3] * 7 + [4] * 7
    assert weight_row(out, defects) == _brute_weight_row(out, defects)


def test_chain_representatives_do_not_matter():
    # relabelling conjugates the group and reorders chain representatives
    out = _s4_on_points_and_pairs()
    defects = np.array([1, 1, 1, 1, 2, 2, 2, 3, 3, 3])
    sigma = np.array([3, 0, 2, 1, 9, 4, 8, 5, 7, 6])
    inv = np.argsort(sigma)
    perms = [sigma[p[inv]] for p in out.label_perms]
    moved = OutGroup(perms, 10)
    new_defects = np.empty_like(defects)
    new_defects[sigma] = defects
    assert weight_row(moved, new_defects) == weight_row(out, defects)


def test_orbit_stabiliser_audit():
    # sum over orbits of |orbit| equals the number of labels for every chain stabiliser
    out = _s4_on_points_and_pairs()
    for ch in chains_up_to_conj(out.G):
        I = ch.stabilizer
        assert out.G.order % len(I) == 0
        seen = set()
        for mu in range(10):
            stab = sum(1 for g in I if out.label_perm(g)[mu] == mu)
            orbit = {int(out.label_perm(g)[mu]) for g in I}
            assert len(orbit) * stab == len(I)
            seen |= orbit
        assert seen == set(range(10))


# catalog rows ----------------------------------------------------------------------

def test_w_cs_u_reference_cell():
    assert api.w_P("CS_U", "F", Params.for_l(1), 3 + 6) == -11


def test_sylow_row_is_its_histogram():
    p = Params.for_l(1)
    assert api.w_row("S", "F", 1) == api.s_histogram(p)


def test_elementary_abelian_row_vanishes():
    assert set(api.w_row("A", "F", 0).values()) == {0}


def test_m_total_l0():
    assert api.m_total("F", Params.for_l(0), 4) == 2
    assert api.m_total("H", Params.for_l(0), 4) == 2


def test_class_counts():
    assert api.class_counts(Params.for_l(1)) == (158, 152)


def test_result_cache_roundtrip(tmp_path):
    cache = api.ResultCache(tmp_path)
    cache.put("X", "F", 3, {4: -2, 7: 5})
    assert cache.get("X", "F", 3) == {4: -2, 7: 5}
    assert cache.get("X", "H", 3) is None
    assert not list(tmp_path.glob("*.tmp"))


def test_cache_env_var(tmp_path, monkeypatch):
    monkeypatch.setenv(api.CACHE_ENV, str(tmp_path))
    cache = api.ResultCache()
    cache.put("Y", "H", 1, {1: 1})
    assert list(tmp_path.iterdir())


def test_row_outside_its_system():
    with pytest.raises(api.MissingRow):
        api.w_row("A", "H", 0)
