"""Weight rows for catalog members, their sums m(D, 0, d), and the checks built on them."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from ..catalog.extract import MonomialSubgroup
from ..catalog.params import Params
from ..catalog.registry import SubgroupSpec, build_S, build_subgroup, get_spec, model_K, specs_for
from ..characters.clifford import CliffordIrr
from ..poly.rational import RationalPoly, interpolate
from .engine import ZCache, weight_row

CACHE_ENV = "SOLWEIGHTS_CACHE"
W_TOTAL = 12  # w(D, 0), independent of q


class MissingRow(LookupError):
    pass


class ResultCache:
    """Rows on disk, one JSON file per (spec, system, l)."""

    def __init__(self, root: str | os.PathLike | None = None):
        root = root or os.environ.get(CACHE_ENV)
        self.root = Path(root) if root else None

    def _path(self, spec: str, system: str, l: int) -> Path | None:
        return self.root / f"w_{spec}_{system}_l{l}.json" if self.root else None

    def get(self, spec, system, l):
        path = self._path(spec, system, l)
        if path is None or not path.exists():
            return None
        return {int(k): v for k, v in json.loads(path.read_text()).items()}

    def put(self, spec, system, l, row):
        path = self._path(spec, system, l)
        if path is None:
            return
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(".tmp")
        tmp.write_text(json.dumps({str(k): v for k, v in sorted(row.items())}))
        tmp.replace(path)


_MEMO: dict = {}
_ZCACHE = ZCache()


def w_row(spec: SubgroupSpec | str, system: str, l: int, cache: ResultCache | None = None) -> dict[int, int]:
    """{d: w_P(D, 0, d)} over every defect carried by Irr(P)."""
    spec = get_spec(spec) if isinstance(spec, str) else spec
    if system not in spec.systems:
        raise MissingRow(f"{spec.name} is not a row of {system}")
    key = (spec.name, system, l)
    if key in _MEMO:
        return dict(_MEMO[key])
    row = cache.get(*key) if cache else None
    if row is None:
        # Irr(P) dominates the cost, so every system sharing the model is done in one pass
        m = build_subgroup(spec, Params.for_l(l))
        for other in spec.systems:
            okey = (spec.name, other, l)
            if okey in _MEMO:
                continue
            orow = cache.get(*okey) if cache else None
            if orow is None:
                orow = weight_row(m.out(other).group, m.irr.defects(), _ZCACHE)
                if cache:
                    cache.put(*okey, orow)
            _MEMO[okey] = dict(orow)
        return dict(_MEMO[key])
    _MEMO[key] = dict(row)
    return dict(row)


def w_P(spec, system: str, p: Params, d: int) -> int:
    return w_row(spec, system, p.l).get(d, 0)


def offset_row(spec: SubgroupSpec | str, system: str, l: int, cache=None) -> dict[int, int]:
    """The row keyed by offset c in d = a l + c."""
    spec = get_spec(spec) if isinstance(spec, str) else spec
    return {d - spec.type * l: v for d, v in w_row(spec, system, l, cache).items()}


def fit_row(spec: SubgroupSpec | str, system: str, cache=None) -> dict[int, RationalPoly]:
    """Interpolate each offset through l = 1..a+1."""
    spec = get_spec(spec) if isinstance(spec, str) else spec
    ls = range(1, spec.type + 2)
    rows = {l: offset_row(spec, system, l, cache) for l in ls}
    offsets = sorted(set().union(*rows.values()))
    return {c: interpolate([(1 << l, rows[l].get(c, 0)) for l in ls], spec.type) for c in offsets}


def m_total(system: str, p: Params, d: int, cache=None) -> int:
    return sum(w_row(s, system, p.l, cache).get(d, 0) for s in specs_for(system, p.l))


@dataclass
class WeightSummary:
    system: str
    l: int
    values: dict = field(default_factory=dict)   # d -> m(D, 0, d)

    @property
    def total(self) -> int:
        return sum(self.values.values())


def m_summary(system: str, p: Params, cache=None) -> WeightSummary:
    values: dict[int, int] = {}
    specs = specs_for(system, p.l)
    if not specs:
        raise MissingRow(f"no rows for {system} at l={p.l}")
    for s in specs:
        for d, v in w_row(s, system, p.l, cache).items():
            values[d] = values.get(d, 0) + v
    return WeightSummary(system, p.l, dict(sorted(values.items())))


# classes of S and [S, S] ------------------------------------------------------

def derived_subgroup(S: MonomialSubgroup) -> MonomialSubgroup:
    K = S.K
    gens = S.generators
    comm = []
    for i, x in enumerate(gens):
        for y in gens[i + 1:]:
            comm.append(K.mul(K.mul(x, y), K.mul(K.inv(x), K.inv(y))))
    D = MonomialSubgroup(K, comm, "[S,S]", S.full_blocks)
    while True:
        new = [K.conj(g, c) for g in gens for c in D.generators if not D.contains(K.conj(g, c))]
        if not new:
            return D
        D = MonomialSubgroup(K, D.generators + new[:1], "[S,S]", S.full_blocks)


def class_counts(p: Params) -> tuple[int, int]:
    S = build_S(p)
    return len(CliffordIrr(S.pres)), len(CliffordIrr(derived_subgroup(S).pres))


# conjecture battery -------------------------------------------------------------

def s_histogram(p: Params) -> dict[int, int]:
    return CliffordIrr(build_S(p).pres).histogram()


def conjecture_checks(system: str, p: Params, cache=None) -> list[dict]:
    """Items (1)-(6), with k(D, 0) taken to be m(D, 0)."""
    summ = m_summary(system, p, cache)
    m = summ.values
    k = summ.total
    S = build_S(p)
    top = S.order.bit_length() - 1
    kS, kD = class_counts(p)
    hist = s_histogram(p)
    nz = [d for d, v in m.items() if v != 0]

    def first_gap(values):
        rs = [top - d for d, v in values.items() if v != 0 and d < top]
        return min(rs) if rs else None

    # item (5) bounds k over the top-defect count; the maximum over all d is reported alongside
    ratio5 = Fraction(k, m[top]) if m.get(top) else None
    worst5 = max((Fraction(k, v) for v in m.values() if v > 0), default=Fraction(0))
    items = [
        (1, k <= S.order, k, S.order),
        (2, all(v >= 0 for d, v in m.items() if d > 0), min(m.values()), 0),
        (3, any(d != top for d in nz), nz, top),
        (4, first_gap(hist) == first_gap(m), first_gap(hist), first_gap(m)),
        (5, ratio5 is not None and ratio5 <= kD, str(ratio5), kD),
        (6, Fraction(k, W_TOTAL) <= kS, str(Fraction(k, W_TOTAL)), kS),
    ]
    out = [{"item": i, "ok": bool(ok), "lhs": lhs, "rhs": rhs} for i, ok, lhs, rhs in items]
    out[4]["max_over_d"] = str(worst5)
    return out


def reset_memo():
    _MEMO.clear()


__all__ = [
    "ResultCache", "MissingRow", "WeightSummary", "w_row", "w_P", "offset_row", "fit_row",
    "m_total", "m_summary", "class_counts", "derived_subgroup", "conjecture_checks",
    "model_K", "CACHE_ENV",
]
