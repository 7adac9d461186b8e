"""Lusztig-series datasets and defect-count polynomials k_d."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from importlib import resources

from ..poly.rational import RationalPoly
from .cyclo import TOP, CycloDegree, LinearForm


class SchemaViolation(ValueError):
    pass


class FamilyCollision(UserWarning):
    pass


@dataclass(frozen=True)
class SeriesRow:
    label: str
    class_count: RationalPoly
    index: CycloDegree
    degrees: tuple[CycloDegree, ...]
    stated: tuple[LinearForm, ...]  # shipped v2(lambda(1) * index) column
    locus: str = ""

    def valuations(self, branch: int) -> list[LinearForm]:
        iv = self.index.v2(branch)
        return [iv + d.v2(branch) for d in self.degrees]

    def defects(self, branch: int) -> list[LinearForm]:
        return [TOP - v for v in self.valuations(branch)]


SYSTEM_FILES = {"spin7": "spin7_q{}.dat", "spets": "spets_q{}.dat"}


def assemble_series(system: str, branch: int) -> list[SeriesRow]:
    if system not in SYSTEM_FILES or branch not in (1, 3):
        raise ValueError(f"unknown series {system!r} / branch {branch!r}")
    name = SYSTEM_FILES[system].format(branch)
    text = resources.files("solweights.data").joinpath("series", name).read_text("utf-8")
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        locus = f"{name}:{lineno}"
        fields = [f.strip() for f in line.split("|")]
        if len(fields) != 5:
            raise SchemaViolation(f"{locus}: expected 5 fields, got {len(fields)}")
        try:
            label = fields[0]
            count = RationalPoly.parse(fields[1])
            index = CycloDegree.parse(fields[2])
            degrees = tuple(CycloDegree.parse(t) for t in fields[3].split(";"))
            stated = tuple(LinearForm.parse(t) for t in fields[4].split(","))
        except ValueError as exc:
            raise SchemaViolation(f"{locus}: {exc}") from None
        if len(degrees) != len(stated):
            raise SchemaViolation(f"{locus}: {len(degrees)} degrees but {len(stated)} valuations")
        for l in range(6):
            if count(2 ** l) < 0:
                raise SchemaViolation(f"{locus}: negative class count at l={l}")
        rows.append(SeriesRow(label, count, index, degrees, stated, locus))
    return rows


def column_mismatches(rows: list[SeriesRow], branch: int) -> list[tuple[str, int, str, str]]:
    """Entries where the recomputed valuation differs from the shipped one."""
    bad = []
    for r in rows:
        for i, (got, want) in enumerate(zip(r.valuations(branch), r.stated)):
            if got != want:
                bad.append((r.locus, i, str(want), str(got)))
    return bad


def kd_all(rows: list[SeriesRow], branch: int) -> dict[LinearForm, RationalPoly]:
    """Character counts per defect family d = a*l + b, keyed by the form."""
    acc: dict[LinearForm, RationalPoly] = defaultdict(RationalPoly)
    for r in rows:
        for d in r.defects(branch):
            acc[d] = acc[d] + r.class_count
    return dict(sorted(acc.items()))


def kd_poly(rows: list[SeriesRow], branch: int, d: LinearForm) -> RationalPoly:
    return kd_all(rows, branch).get(d, RationalPoly())


def kd_numeric(rows: list[SeriesRow], branch: int, l: int) -> tuple[dict[int, int], list]:
    """Counts at a concrete l; families landing on the same d are summed and reported."""
    fams = kd_all(rows, branch)
    out: dict[int, int] = defaultdict(int)
    owners = defaultdict(list)
    x = 2 ** l
    for f, p in fams.items():
        v = p(x)
        out[f.at(l)] += int(v)
        owners[f.at(l)].append(str(f))
    collisions = [(d, fs) for d, fs in sorted(owners.items()) if len(fs) > 1]
    return dict(sorted(out.items())), collisions


def total_count(rows: list[SeriesRow]) -> RationalPoly:
    acc = RationalPoly()
    for r in rows:
        acc = acc + r.class_count * len(r.degrees)
    return acc
