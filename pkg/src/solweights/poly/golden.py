"""Loaders for the shipped reference tables and comparison reports.

Schema of the files under ``data/golden`` (UTF-8, '#' starts a comment,
fields separated by '|'):

* ``table1.dat``: slope | intercept | H coefficients | F coefficients.
  The defect family is d = slope*l + intercept; the row ``total | total``
  holds m(D,0).
* ``table2.dat``: label | systems | d | value. A value ``"u, v"`` means
  (H-value, F-value); a single value applies to every listed system.
* ``table3.dat``: label | systems | type a | offset c | coefficients.
  The cell sits at d = a*l + c. Absent cells are zero.

Coefficients are exact fractions in x = 2^l, lowest degree first.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

from .rational import RationalPoly

SYSTEMS = ("H", "F")


def _rows(name: str):
    text = resources.files("solweights.data").joinpath("golden", name).read_text("utf-8")
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            yield [f.strip() for f in line.split("|")]


def _systems(field: str) -> tuple[str, ...]:
    out = tuple(s.strip() for s in field.split(","))
    if not out or any(s not in SYSTEMS for s in out):
        raise ValueError(f"bad system list {field!r}")
    return out


@dataclass(frozen=True)
class Table3Cell:
    label: str
    systems: tuple[str, ...]
    a: int
    offset: int
    poly: RationalPoly

    def family(self) -> tuple[int, int]:
        return (self.a, self.offset)


def load_table3() -> list[Table3Cell]:
    return [Table3Cell(lab, _systems(sy), int(a), int(c), RationalPoly.parse(co))
            for lab, sy, a, c, co in _rows("table3.dat")]


def load_table1() -> dict:
    """Maps (slope, intercept) or "total" to {system: RationalPoly}."""
    out = {}
    for s, c, h, f in _rows("table1.dat"):
        key = "total" if s == "total" else (int(s), int(c))
        out[key] = {"H": RationalPoly.parse(h), "F": RationalPoly.parse(f)}
    return out


def load_table2() -> list[tuple[str, tuple[str, ...], int, dict[str, int]]]:
    out = []
    for lab, sy, d, val in _rows("table2.dat"):
        systems = _systems(sy)
        parts = [int(v) for v in val.split(",")]
        if len(parts) == 2:
            vals = dict(zip(SYSTEMS, parts))
        else:
            vals = {s: parts[0] for s in systems}
        out.append((lab, systems, int(d), vals))
    return out


def row_types() -> dict[str, int]:
    return {c.label: c.a for c in load_table3()}


def rows_for(system: str) -> list[str]:
    seen = []
    for c in load_table3():
        if system in c.systems and c.label not in seen:
            seen.append(c.label)
    return seen


def table3_cells(system: str) -> dict[tuple[str, int], RationalPoly]:
    return {(c.label, c.offset): c.poly for c in load_table3() if system in c.systems}


def family_sums(cells: dict[tuple[str, int], RationalPoly], types: dict[str, int]) -> dict:
    """Group (label, offset) polynomials into defect families (a, offset)."""
    acc = defaultdict(RationalPoly)
    for (label, offset), poly in cells.items():
        acc[(types[label], offset)] = acc[(types[label], offset)] + poly
    return dict(acc)


def _fmt(p):
    return None if p is None else p.encode()


def verify_wpdod(system: str, computed: dict[tuple[str, int], RationalPoly]) -> list[dict]:
    """Cell-by-cell comparison of fitted rows with the l > 0 reference table."""
    ref = table3_cells(system)
    report = []
    for key in sorted(set(ref) | set(computed)):
        want = ref.get(key, RationalPoly())
        got = computed.get(key)
        report.append({"label": key[0], "offset": key[1], "expected": _fmt(want),
                       "computed": _fmt(got), "ok": got == want})
    return report


def verify_m(system: str, computed: dict[tuple[str, int], RationalPoly]) -> list[dict]:
    """Compare family sums with the m-table and their x = 1 values with the l = 0 table."""
    types = row_types()
    sums = family_sums(computed, types)
    t1 = load_table1()
    report = []
    total = RationalPoly()
    for fam in sorted(set(k for k in t1 if k != "total") | set(sums)):
        want = t1[fam][system] if fam in t1 else RationalPoly()
        got = sums.get(fam, RationalPoly())
        total = total + got
        report.append({"check": "family", "family": f"{fam[0]}l+{fam[1]}",
                       "expected": _fmt(want), "computed": _fmt(got), "ok": got == want})
    want = t1["total"][system]
    report.append({"check": "total", "family": "all", "expected": _fmt(want),
                   "computed": _fmt(total), "ok": total == want})
    at_zero = defaultdict(Fraction)
    for (a, c), p in sums.items():
        at_zero[c] += p(1)
    ref0 = {d: v[system] for lab, sy, d, v in load_table2() if lab == "m" and system in v}
    for d in sorted(set(ref0) | set(at_zero)):
        want0 = ref0.get(d, 0)
        got0 = at_zero.get(d, Fraction(0))
        report.append({"check": "l=0", "family": str(d), "expected": str(want0),
                       "computed": str(got0), "ok": got0 == want0})
    return report
