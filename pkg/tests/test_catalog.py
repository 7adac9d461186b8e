import numpy as np
import pytest

from solweights.algebra.fields import ParamsInvalid
from solweights.catalog import exotic, outactions
from solweights.catalog.kmodel import build_K
from solweights.catalog.params import Params, choose_q
from solweights.catalog.registry import (
    CATALOG, build_S, build_subgroup, get_spec, out_index_check, specs_for,
)
from solweights.characters.dixon import v2
from solweights.poly.golden import load_table2, load_table3, row_types


def test_choose_q():
    assert [choose_q(l) for l in range(5)] == [5, 9, 17, 97, 193]
    for l in range(6):
        q = choose_q(l)
        assert q % 4 == 1 and v2(q * q - 1) == l + 3


def test_params_validation():
    assert Params(1, 9).x == 2
    with pytest.raises(ParamsInvalid):
        Params(1, 5)
    with pytest.raises(ParamsInvalid):
        Params(0, 7)


@pytest.fixture(scope="module")
def K1():
    return build_K(Params.for_l(1))


def test_k_permutation_elements(K1):
    K = K1
    assert K.order_of(K.tau) == 2
    assert K.order_of(K.mul(K.tau, K.gamma)) == 3


def test_k_diagonal_element(K1):
    # a^(2^(l+2)) = -I in each factor, so the image of (a, a, a) has order 2^(l+2)
    K = K1
    B = K.B
    assert B.power(K.a, 1 << 3) == B.neg(B.I)
    assert K.order_of(K.c) == 1 << 3


def test_k_tau_swaps_blocks(K1):
    K = K1
    x = K.block(0, K.w)
    assert K.conj(K.tau, x) == K.block(1, K.w)


def test_k_matrix_model_agrees(K1):
    K = K1
    F = K.F
    mk = K.matrix_kind()
    rng = np.random.default_rng(0)
    gens = K.generators()
    for _ in range(20):
        x, y = (gens[i] for i in rng.integers(len(gens), size=2))
        lhs = K.to_matrix(K.mul(x, y))
        rhs = mk.mul(K.to_matrix(x), K.to_matrix(y))
        assert lhs in (tuple(rhs), tuple(F.neg(v) for v in rhs))


@pytest.mark.parametrize("l", [0, 1, 2])
def test_sylow_order(l):
    S = build_S(Params.for_l(l))
    assert S.order == 1 << (3 * l + 10)
    q = choose_q(l)
    spin7 = q ** 9 * (q ** 2 - 1) * (q ** 4 - 1) * (q ** 6 - 1)
    assert v2(spin7) == 3 * l + 10


def test_sylow_block_permutations():
    # S maps onto <tau>: the permutation parts of its coset representatives are id and a swap
    S = build_S(Params.for_l(1))
    perms = {rep[3] for rep in S.reps}
    assert len(perms) == 2 and (0, 1, 2) in perms
    assert S.contains(S.K.tau) or any(p != (0, 1, 2) and p[2] == 2 for p in perms)


@pytest.mark.parametrize("k", [2, 3, 4, 5])
def test_gl32_lift(k):
    x, y = exotic.gl32_lift(k)
    x0, y0 = exotic.standard_gl32_generators()
    assert np.array_equal(x % 2, x0) and np.array_equal(y % 2, y0)
    assert exotic.closure_mats([x, y], k).order == 168


def test_catalog_matches_reference_rows():
    types = row_types()
    for name, a in types.items():
        assert get_spec(name).type == a
    ref_systems = {}
    for cell in load_table3():
        ref_systems.setdefault(cell.label, set()).update(cell.systems)
    for name, systems in ref_systems.items():
        assert set(get_spec(name).systems) == systems, name
    l0 = {lab for lab, *_ in load_table2() if lab != "m"}
    assert {s.name for s in CATALOG.values() if s.applies(0)} == l0


@pytest.mark.parametrize("l", [0, 1])
def test_orders_match_catalog(l):
    p = Params.for_l(l)
    for spec in CATALOG.values():
        if spec.applies(l):
            assert build_subgroup(spec, p).order == 1 << spec.log_order(l), spec.name


def test_out_orders_l1():
    p = Params.for_l(1)
    assert build_subgroup("CS_U", p).out("F").order == 6
    assert build_subgroup("R152", p).out("H").order == 120
    assert build_subgroup("CS_E", p).out("F").order == 168
    assert build_subgroup("CS_EZ", p).out("F").order == 6
    assert build_subgroup("S", p).out("F").order == 1


def test_out_action_preserves_defects():
    m = build_subgroup("Q1Q2R3", Params.for_l(1))
    defects = m.irr.defects()
    for a in m.automorphisms["F"]:
        perm = m.irr.permutation(a)
        assert np.array_equal(defects[perm], defects)


def test_out_index_check():
    p = Params.for_l(1)
    assert out_index_check("CS_E", p)["status"] == "exception"
    rep = out_index_check("Q1Q2Q3", p)
    assert rep["status"] == "ok" and rep["index_H"] in (1, 3)
    rep = out_index_check("Q1R2R3", p)
    assert rep["index_H"] == 1 and rep["status"] == "ok"


def test_outactions_checksum():
    recs = outactions.load()
    assert {r.name for r in recs} == {"R17", "R17p"}
    text = (outactions.resources.files("solweights.data") / "catalog/outactions.dat").read_text()
    with pytest.raises(outactions.DataIntegrityError):
        outactions.parse(text.replace("out_order = 36", "out_order = 72"))
    with pytest.raises(outactions.SpecUnavailable):
        outactions.record_for("R17", 1, records=[])


def test_specs_for_levels():
    assert {s.name for s in specs_for("F", 0)} >= {"Q", "Qt", "Qtp", "A", "CS_E"}
    assert "Q" not in {s.name for s in specs_for("F", 1)}
    assert "A" not in {s.name for s in specs_for("H", 1)}
