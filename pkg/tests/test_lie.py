from fractions import Fraction

import pytest
import sympy

from solweights.lie.compare import exotic_check, owc_check
from solweights.lie.cyclo import CycloDegree, LinearForm, UnsupportedIndex, phi_v2
from solweights.lie.series import assemble_series, column_mismatches, kd_all, kd_numeric, total_count

X = sympy.Symbol("x")


def _v2(n) -> int:
    n = Fraction(n)
    num, den = abs(n.numerator), n.denominator
    return ((num & -num).bit_length() - 1) - ((den & -den).bit_length() - 1)


def _sample_q(branch, l, k=1):
    # odd q with q = branch (mod 4) and v2(q -/+ 1) = l + 2
    step = 1 << (l + 2)
    return step * (2 * k + 1) + 1 if branch == 1 else step * (2 * k + 1) - 1


@pytest.mark.parametrize("branch", [1, 3])
@pytest.mark.parametrize("n", [1, 2, 3, 4, 6, 7, 14])
def test_phi_valuations_numeric(branch, n):
    for l in range(4):
        for k in range(3):
            q = _sample_q(branch, l, k)
            val = int(sympy.cyclotomic_poly(n, X).subs(X, q))
            assert _v2(val) == phi_v2(n, branch).at(l)


def test_unsupported_index():
    with pytest.raises(UnsupportedIndex):
        phi_v2(5, 1)
    with pytest.raises(UnsupportedIndex):
        CycloDegree.parse("q p5")


def test_linear_form_roundtrip():
    for text in ["3l+10", "l-2", "-l+1", "7", "2l"]:
        f = LinearForm.parse(text)
        assert LinearForm.parse(str(f)) == f
    assert LinearForm.parse("3l+10").at(2) == 16


def _value(d: CycloDegree, q: int) -> Fraction:
    v = d.c * q ** d.qpow
    for n, e in d.phi:
        v *= int(sympy.cyclotomic_poly(n, X).subs(X, q)) ** e
    return v


@pytest.mark.parametrize("series", ["spin7", "spets"])
@pytest.mark.parametrize("branch", [1, 3])
def test_degree_valuations_numeric(series, branch):
    # sqrt(-7) is a 2-adic unit, so it is dropped from the numeric value
    for row in assemble_series(series, branch):
        for l in (1, 2):
            q = _sample_q(branch, l)
            iv = _v2(_value(row.index, q))
            for d, form in zip(row.degrees, row.valuations(branch)):
                assert iv + _v2(_value(d, q)) == form.at(l), row.label


@pytest.mark.parametrize("series", ["spin7", "spets"])
@pytest.mark.parametrize("branch", [1, 3])
def test_shipped_columns_agree(series, branch):
    assert column_mismatches(assemble_series(series, branch), branch) == []


@pytest.mark.parametrize("branch", [1, 3])
def test_kd_numeric_sums_to_total(branch):
    rows = assemble_series("spin7", branch)
    tot = total_count(rows)
    for l in range(5):
        counts, _ = kd_numeric(rows, branch, l)
        assert sum(counts.values()) == tot(2 ** l)
    assert sum(kd_all(rows, branch).values(), type(tot)()) == tot


@pytest.mark.parametrize("branch", [1, 3])
def test_owc_spin7(branch):
    rep = owc_check(branch, range(0, 5))
    assert rep["ok"], [f for f in rep["families"] if not f["ok"]]


@pytest.mark.parametrize("branch", [1, 3])
def test_exotic_spets(branch):
    rep = exotic_check(branch, range(0, 5))
    assert rep["residual_ok"] and rep["total_ok"]
    assert rep["ok"]
