"""Local/global count comparisons for Spin7(q) and the DI(4) spets."""

from __future__ import annotations

from ..poly.golden import load_table1
from ..poly.rational import RationalPoly
from .cyclo import ZERO, LinearForm
from .series import assemble_series, kd_all, kd_numeric, total_count


def reference_m(system: str) -> dict[LinearForm, RationalPoly]:
    t1 = load_table1()
    return {LinearForm(*k): v[system] for k, v in t1.items() if k != "total"}


def _numeric_rows(kd_fams, m_fams, l_range):
    rows = []
    for l in l_range:
        x = 2 ** l
        lhs, rhs = {}, {}
        for f, p in kd_fams.items():
            lhs[f.at(l)] = lhs.get(f.at(l), 0) + p(x)
        for f, p in m_fams.items():
            rhs[f.at(l)] = rhs.get(f.at(l), 0) + p(x)
        for d in sorted(set(lhs) | set(rhs)):
            a, b = lhs.get(d, 0), rhs.get(d, 0)
            rows.append({"l": l, "d": d, "k": str(a), "m": str(b), "ok": a == b})
    return rows


def owc_check(branch: int, l_range=range(0, 5), m_polys=None) -> dict:
    """k_d(B_0(Spin7(q))) against m(H,0,d), per family and numerically."""
    m = m_polys if m_polys is not None else reference_m("H")
    kd = kd_all(assemble_series("spin7", branch), branch)
    fams = []
    for f in sorted(set(kd) | set(m)):
        a, b = kd.get(f, RationalPoly()), m.get(f, RationalPoly())
        fams.append({"family": str(f), "k": a.encode(), "m": b.encode(), "ok": a == b})
    numeric = _numeric_rows(kd, m, l_range)
    ok = all(r["ok"] for r in fams) and all(r["ok"] for r in numeric)
    return {"system": "H", "branch": branch, "families": fams, "numeric": numeric, "ok": ok}


def exotic_check(branch: int, l_range=range(0, 5), m_polys=None, m_total=None) -> dict:
    """k_d(X(q)) against m(F,0,d) on the m-families; the rest must be 6 characters of defect 0."""
    m = m_polys if m_polys is not None else reference_m("F")
    if m_total is None:
        m_total = load_table1()["total"]["F"]
    rows = assemble_series("spets", branch)
    kd = kd_all(rows, branch)
    listed = set(load_table1()) - {"total"}
    listed = {LinearForm(*k) for k in listed}
    fams = []
    for f in sorted(listed):
        a, b = kd.get(f, RationalPoly()), m.get(f, RationalPoly())
        fams.append({"family": str(f), "k": a.encode(), "m": b.encode(), "ok": a == b})
    residual = {str(f): p.encode() for f, p in kd.items() if f not in listed}
    residual_ok = set(residual) == {str(ZERO)} and kd[ZERO] == RationalPoly([6])
    total = total_count(rows)
    total_ok = total == m_total + RationalPoly([6])
    listed_kd = {f: p for f, p in kd.items() if f in listed}
    numeric = _numeric_rows(listed_kd, {f: p for f, p in m.items() if f in listed}, l_range)
    ok = all(r["ok"] for r in fams) and residual_ok and total_ok and all(r["ok"] for r in numeric)
    return {"system": "F", "branch": branch, "families": fams, "residual": residual,
            "residual_ok": residual_ok, "total": total.encode(), "total_ok": total_ok,
            "numeric": numeric, "ok": ok}


__all__ = ["owc_check", "exotic_check", "reference_m", "kd_numeric"]
