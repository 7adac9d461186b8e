from math import factorial

import numpy as np
import pytest

from conftest import perm_from_cycles
from solweights.algebra.groups import GenGroup, PermKind
from solweights.characters.clifford import CliffordIrr, Presentation, oracle_compare
from solweights.characters.dixon import defect, defect_histogram, dixon_table, z_defect_zero
from solweights.characters.labels import (
    LittleGroups, QuaternionLinear, QuaternionPsi, centre_not_in_kernel, little_groups_irr,
    quaternion_group, quaternion_irr,
)


def _partitions(n, top=None):
    top = top or n
    if n == 0:
        yield ()
        return
    for k in range(min(n, top), 0, -1):
        for rest in _partitions(n - k, k):
            yield (k,) + rest


def _hook_degree(shape):
    n = sum(shape)
    conj = [sum(1 for r in shape if r > j) for j in range(shape[0])]
    hooks = 1
    for i, r in enumerate(shape):
        for j in range(r):
            hooks *= (r - j - 1) + (conj[j] - i - 1) + 1
    return factorial(n) // hooks


def _symmetric(n):
    return GenGroup(PermKind(n), [perm_from_cycles(n, (0, 1)), perm_from_cycles(n, tuple(range(n)))])


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_dixon_degrees_match_hook_lengths(n):
    table = dixon_table(_symmetric(n))
    assert sorted(table.degrees) == sorted(_hook_degree(s) for s in _partitions(n))
    assert table.check_orthogonality()


def test_dixon_gl32(gl32_perm):
    table = dixon_table(gl32_perm)
    assert sorted(table.degrees) == [1, 3, 3, 6, 7, 8]
    assert sum(d * d for d in table.degrees) == 168


def test_dixon_quaternion_l2():
    degs = sorted(dixon_table(quaternion_group(2)).degrees)
    assert degs == [1] * 4 + [2] * 7


def test_defect_examples():
    assert defect(1, 4) == 4
    assert defect(8, 3) == 0
    l = 2
    assert defect(2, l + 3) == l + 2


@pytest.mark.parametrize("n,expected", [(3, 1), (4, 0), (5, 0), (6, 1)])
def test_z_defect_zero_symmetric(n, expected):
    # oracle: hook-length degrees carrying the full 2-part of n!
    two = factorial(n) & -factorial(n)
    assert sum(1 for s in _partitions(n) if _hook_degree(s) % two == 0) == expected
    assert z_defect_zero(_symmetric(n)) == expected


def test_z_defect_zero_small_cases(gl32_perm):
    assert z_defect_zero(GenGroup(PermKind(2), [])) == 1
    assert z_defect_zero(quaternion_group(1)) == 0
    assert z_defect_zero(gl32_perm) == 1


def test_defect_histogram_q8():
    assert defect_histogram([1, 1, 1, 1, 2], 8) == {3: 4, 2: 1}


@pytest.mark.parametrize("l", range(0, 6))
def test_quaternion_counts(l):
    irr = quaternion_irr(l)
    assert len(irr) == (1 << (l + 1)) + 3
    assert sorted(irr.degrees) == [1] * 4 + [2] * ((1 << (l + 1)) - 1)
    assert len(centre_not_in_kernel(irr, l)) == 1 << l


@pytest.mark.parametrize("l", range(0, 5))
def test_quaternion_formulas_match_oracle(l):
    irr = quaternion_irr(l)
    assert irr.matches(dixon_table(irr.G, prime=irr.prime))


def test_quaternion_kernel_split():
    # degree-2 characters with Z(R) in the kernel number x - 1, the others x
    for l in range(1, 4):
        irr = quaternion_irr(l)
        bad = centre_not_in_kernel(irr, l)
        two = [lab for lab in irr.labels if isinstance(lab, QuaternionPsi)]
        assert len([t for t in two if t not in bad]) == (1 << l) - 1
        assert len([t for t in two if t in bad]) == 1 << l


def test_outer_automorphism_of_quaternion():
    l = 2
    irr = quaternion_irr(l)
    G = irr.G
    n = 1 << (l + 2)

    def alpha(g):
        # a -> a, b -> ab, which swaps the two classes of Q8 subgroups
        k, e = g
        return G.mul((k, 0), (1, 1)) if e else (k % n, 0)

    perm = irr.permutation(alpha)
    psi = [i for i, lab in enumerate(irr.labels) if isinstance(lab, QuaternionPsi)]
    assert all(perm[i] == i for i in psi)
    moved = [lab for i, lab in enumerate(irr.labels) if perm[i] != i]
    assert sorted(moved) == [QuaternionLinear(1), QuaternionLinear(3)]
    assert irr.act(alpha, QuaternionLinear(1)) == QuaternionLinear(3)


def test_action_is_homomorphic():
    irr = quaternion_irr(1)
    G = irr.G
    auts = [lambda g: G.kind.conj((1, 1), g), lambda g: (g[0] * 3 % 8, g[1])]
    for f in auts:
        for h in auts:
            comp = irr.permutation(lambda g: f(h(g)))
            pf, ph = irr.permutation(f), irr.permutation(h)
            assert comp == [pf[ph[k]] for k in range(len(irr))]
    # defects are preserved
    degs = irr.degrees
    assert all(degs[k] == degs[p] for k, p in enumerate(irr.permutation(auts[1])))


def test_little_groups_d8():
    D8 = GenGroup(PermKind(4), [(1, 2, 3, 0), (3, 2, 1, 0)])
    C4 = GenGroup(PermKind(4), [(1, 2, 3, 0)])
    L = little_groups_irr(D8, C4)
    assert sorted(L.degrees) == [1, 1, 1, 1, 2]
    assert all(isinstance(lab, LittleGroups) for lab in L.labels)
    assert L.matches(dixon_table(D8, prime=L.prime))


def test_little_groups_index_two_torus():
    # T x| <-1> with T = (Z/4)^2: real characters extend twice, the others induce
    n = 4

    def perm_of(a, b, e):
        # act on the 32 points (x, y, s) by translation and negation
        pts = [(x, y, s) for x in range(n) for y in range(n) for s in range(2)]
        idx = {p: i for i, p in enumerate(pts)}
        out = []
        for x, y, s in pts:
            if e:
                x, y, s = -x, -y, 1 - s
            out.append(idx[((x + a) % n, (y + b) % n, s)])
        return tuple(out)

    kind = PermKind(2 * n * n)
    G = GenGroup(kind, [perm_of(1, 0, 0), perm_of(0, 1, 0), perm_of(0, 0, 1)])
    T = GenGroup(kind, [perm_of(1, 0, 0), perm_of(0, 1, 0)])
    L = little_groups_irr(G, T)
    real = sum(1 for a in range(n) for b in range(n) if (2 * a) % n == 0 and (2 * b) % n == 0)
    assert sorted(L.degrees) == [1] * (2 * real) + [2] * ((n * n - real) // 2)
    assert L.matches(dixon_table(G, prime=L.prime))


def _q8_presentation():
    # Q8 over A = <a> of order 4, Q = {1, b}
    qmul = np.array([[0, 1], [1, 0]])
    M = np.array([[[1]], [[-1 % 4]]])
    f = np.zeros((2, 2, 1), dtype=np.int64)
    f[1, 1, 0] = 2
    return Presentation((4,), qmul, M, f, name="Q8")


def test_clifford_q8_against_oracle():
    pres = _q8_presentation()
    irr = CliffordIrr(pres)
    assert sorted(irr.degrees) == [1, 1, 1, 1, 2]
    pres.check()
    res = oracle_compare(pres, [pres.inner(1)], cap=64)
    assert sorted(res["match"]) == list(range(5))
    assert res["agree"] == [True]


def test_clifford_inner_automorphisms_act_trivially():
    pres = _q8_presentation()
    irr = CliffordIrr(pres)
    for q in range(pres.nq):
        assert list(irr.permutation(pres.inner(q))) == list(range(len(irr)))
