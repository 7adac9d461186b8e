from fractions import Fraction

import pytest
import sympy

from solweights.poly.golden import (
    family_sums, load_table1, load_table2, load_table3, row_types, table3_cells, verify_m,
    verify_wpdod,
)
from solweights.poly.rational import (
    DuplicateAbscissa, OverdeterminedMismatch, RationalPoly, interpolate,
)

X = sympy.Symbol("x")


def _to_sympy(p: RationalPoly):
    return sum((sympy.Rational(c.numerator, c.denominator) * X ** k for k, c in enumerate(p.coeffs)),
               sympy.Integer(0))


def test_arithmetic_against_sympy():
    p = RationalPoly([Fraction(1, 3), -2, 0, 5])
    q = RationalPoly([4, Fraction(-1, 2)])
    assert sympy.expand(_to_sympy(p * q) - _to_sympy(p) * _to_sympy(q)) == 0
    assert sympy.expand(_to_sympy(p - q) - (_to_sympy(p) - _to_sympy(q))) == 0
    assert p(Fraction(2)) == _to_sympy(p).subs(X, 2)


def test_parse_encode_roundtrip():
    p = RationalPoly.parse("1/2 0 -3 7/4")
    assert RationalPoly.parse(p.encode()) == p
    assert RationalPoly.parse("0 0").encode() == "0"
    assert p.degree == 3


def test_interpolate_recovers_polynomial():
    p = RationalPoly([Fraction(-7, 3), 2, Fraction(1, 6)])
    xs = [2, 4, 8, 16]
    assert interpolate([(x, p(x)) for x in xs], 2) == p


def test_interpolate_against_sympy():
    pts = [(2, 5), (4, -1), (8, 11)]
    ref = sympy.interpolate([(a, b) for a, b in pts], X)
    assert sympy.expand(_to_sympy(interpolate(pts, 2)) - ref) == 0


def test_interpolate_errors():
    with pytest.raises(DuplicateAbscissa):
        interpolate([(1, 1), (1, 2)], 1)
    with pytest.raises(OverdeterminedMismatch):
        interpolate([(1, 1), (2, 2), (3, 4)], 1)


def test_reference_tables_are_consistent():
    # family sums of the row table reproduce the m-table, including the total
    for system in ("H", "F"):
        assert all(r["ok"] for r in verify_m(system, table3_cells(system)))
        assert all(r["ok"] for r in verify_wpdod(system, table3_cells(system)))


def test_m_table_at_x1_matches_l0_row():
    t2 = {d: vals for lab, _, d, vals in load_table2() if lab == "m"}
    t1 = load_table1()
    for system in ("H", "F"):
        at1 = {}
        for key, polys in t1.items():
            if key == "total":
                continue
            a, c = key
            v = polys[system](1)
            if v:
                at1[c] = at1.get(c, 0) + v
        assert {d: v for d, v in at1.items() if v} == {d: v[system] for d, v in t2.items() if v[system]}


def test_verify_wpdod_reports_mismatch():
    cells = table3_cells("F")
    key = next(iter(cells))
    bad = dict(cells)
    bad[key] = bad[key] + RationalPoly([1])
    report = verify_wpdod("F", bad)
    assert [r for r in report if not r["ok"]] == [r for r in report if (r["label"], r["offset"]) == key]


def test_row_types_and_family_sums():
    types = row_types()
    assert types["S"] == 3 and types["A"] == 0
    sums = family_sums(table3_cells("H"), types)
    t1 = load_table1()
    for fam, poly in sums.items():
        assert t1.get(fam, {"H": RationalPoly()})["H"] == poly
