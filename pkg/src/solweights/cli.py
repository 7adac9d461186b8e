"""Command line entry point: weights, interpolate, verify, lie, owc."""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from concurrent.futures import ProcessPoolExecutor

from .catalog.params import Params
from .catalog.registry import CATALOG, get_spec, specs_for
from .lie.compare import exotic_check, owc_check
from .lie.series import assemble_series, column_mismatches, kd_all
from .poly.golden import load_table2, row_types, table3_cells, verify_m, verify_wpdod
from .weights import api


class UsageError(Exception):
    pass


# argument helpers ----------------------------------------------------------

def parse_l_range(text: str) -> list[int]:
    m = re.fullmatch(r"(\d+)(?:\.\.(\d+))?", text.strip())
    if not m:
        raise UsageError(f"bad l or l-range {text!r}; use N or N..M")
    lo = int(m.group(1))
    hi = int(m.group(2)) if m.group(2) else lo
    if hi < lo or hi > 5:
        raise UsageError(f"l-range {text!r} must lie within 0..5")
    return list(range(lo, hi + 1))


def parse_offset(text: str) -> tuple[int | None, int]:
    """'3l+6' -> (3, 6); '7' -> (None, 7), an absolute defect."""
    t = text.replace(" ", "")
    m = re.fullmatch(r"(\d*)l([+-]\d+)?", t)
    if m:
        a = int(m.group(1)) if m.group(1) else 1
        return a, int(m.group(2) or 0)
    if re.fullmatch(r"-?\d+", t):
        return None, int(t)
    raise UsageError(f"bad defect offset {text!r}")


def systems_of(arg: str) -> list[str]:
    return ["H", "F"] if arg == "both" else [arg]


def branches_of(arg: str) -> list[int]:
    return [1, 3] if arg == "both" else [int(arg)]


def selected_specs(names, system: str, l: int):
    if not names:
        return specs_for(system, l)
    out = []
    for n in names:
        try:
            s = get_spec(n)
        except KeyError as exc:
            raise UsageError(str(exc)) from None
        if system in s.systems and s.applies(l):
            out.append(s)
    return out


# output ------------------------------------------------------------------------

def render(rows: list[dict], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rows, indent=2, sort_keys=True) + "\n"
    cols = []
    for r in rows:
        for k in r:
            if k not in cols:
                cols.append(k)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: _cell(r.get(k, "")) for k in cols})
        return buf.getvalue()
    lines = ["| " + " | ".join(cols) + " |", "|" + "---|" * len(cols)]
    for r in rows:
        lines.append("| " + " | ".join(str(_cell(r.get(k, ""))) for k in cols) + " |")
    return "\n".join(lines) + "\n"


def _cell(v):
    return json.dumps(v, sort_keys=True) if isinstance(v, (list, dict)) else v


def emit(rows, cfg):
    text = render(rows, cfg.format)
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _progress(msg: str):
    print(msg, file=sys.stderr, flush=True)


# commands ----------------------------------------------------------------------

def _row_task(args):
    name, system, l, cache_dir = args
    cache = api.ResultCache(cache_dir)
    return name, system, l, api.w_row(name, system, l, cache)


def _compute_rows(tasks, cfg):
    """Run (spec, system, l) tasks, in a process pool when workers > 1; merged in task order."""
    tasks = [(n, s, l, cfg.cache_dir) for n, s, l in tasks]
    if cfg.workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            results = list(pool.map(_row_task, tasks))
    else:
        results = []
        for t in tasks:
            _progress(f"w_P {t[0]} {t[1]} l={t[2]}")
            results.append(_row_task(t))
    return {(n, s, l): row for n, s, l, row in results}


def cmd_weights(cfg) -> int:
    ls = parse_l_range(cfg.l)
    off = parse_offset(cfg.d_offset) if cfg.d_offset else None
    tasks = [(s.name, system, l) for system in systems_of(cfg.system) for l in ls
             for s in selected_specs(cfg.spec, system, l)]
    rows_by = _compute_rows(tasks, cfg)
    out = []
    for name, system, l in tasks:
        spec = CATALOG[name]
        for d, v in sorted(rows_by[(name, system, l)].items()):
            c = d - spec.type * l
            if off is not None:
                a, b = off
                if (a is None and d != b) or (a is not None and (a != spec.type or c != b)):
                    continue
            out.append({"spec": name, "system": system, "l": l, "d": d,
                        "offset": f"{spec.type}l+{c}", "w": v})
    emit(out, cfg)
    return 0


def _fitted(system: str, names, cfg):
    cache = api.ResultCache(cfg.cache_dir)
    comp = {}
    for spec in CATALOG.values():
        if system not in spec.systems or spec.levels == "l=0":
            continue
        if names and spec.name not in names:
            continue
        _progress(f"fit {spec.name} {system}")
        for c, p in api.fit_row(spec, system, cache).items():
            comp[(spec.name, c)] = p
    return comp


def cmd_interpolate(cfg) -> int:
    out = []
    for system in systems_of(cfg.system):
        comp = _fitted(system, cfg.spec, cfg)
        for r in verify_wpdod(system, comp):
            if cfg.spec and r["label"] not in cfg.spec:
                continue
            out.append({"table": "wpdod", "system": system, **r})
        if not cfg.spec:
            for r in verify_m(system, comp):
                out.append({"table": "m", "system": system, **r})
    emit(out, cfg)
    return 0 if all(r["ok"] for r in out) else 1


def verify_rows(system: str, l: int, cache) -> list[dict]:
    """Numeric comparison of every catalog row at one l with the reference tables."""
    out = []
    if l == 0:
        ref = {}
        for lab, systems, d, vals in load_table2():
            if system in systems:
                ref.setdefault(lab, {})[d] = vals[system]
        m = api.m_summary(system, Params.for_l(0), cache).values
        for lab in sorted(ref):
            got_row = m if lab == "m" else api.w_row(lab, system, 0, cache)
            for d in sorted(set(ref[lab]) | set(got_row)):
                want, got = ref[lab].get(d, 0), got_row.get(d, 0)
                out.append({"system": system, "l": 0, "row": lab, "d": d,
                            "expected": want, "computed": got, "ok": want == got})
        return out
    cells = table3_cells(system)
    x = 1 << l
    types = row_types()
    for spec in specs_for(system, l):
        got = api.offset_row(spec, system, l, cache)
        want = {c: int(p(x)) for (lab, c), p in cells.items() if lab == spec.name}
        for c in sorted(set(got) | set(want)):
            e, g = want.get(c, 0), got.get(c, 0)
            out.append({"system": system, "l": l, "row": spec.name, "d": types[spec.name] * l + c,
                        "expected": e, "computed": g, "ok": e == g})
    return out


def cmd_verify(cfg) -> int:
    cache = api.ResultCache(cfg.cache_dir)
    out = []
    for system in systems_of(cfg.system):
        for l in parse_l_range(cfg.l):
            out.extend(verify_rows(system, l, cache))
    bad = [r for r in out if not r["ok"]]
    emit(bad if cfg.diff_only else out, cfg)
    return 0 if not bad else 1


def cmd_lie(cfg) -> int:
    out = []
    for series in ("spin7", "spets"):
        for branch in branches_of(cfg.branch):
            rows = assemble_series(series, branch)
            bad = column_mismatches(rows, branch)
            for r in rows:
                out.append({"kind": "row", "series": series, "branch": branch, "label": r.label,
                            "valuations": [str(v) for v in r.valuations(branch)],
                            "stated": [str(v) for v in r.stated]})
            for f, p in kd_all(rows, branch).items():
                out.append({"kind": "kd", "series": series, "branch": branch,
                            "family": str(f), "count": p.encode()})
            out.append({"kind": "column_check", "series": series, "branch": branch,
                        "ok": not bad, "mismatches": [list(b) for b in bad]})
    emit(out, cfg)
    return 0 if all(r.get("ok", True) for r in out) else 1


def cmd_owc(cfg) -> int:
    ls = parse_l_range(cfg.l)
    out = []
    for branch in branches_of(cfg.branch):
        rep = owc_check(branch, ls)
        out.append({"check": "owc_spin7", "branch": branch, "ok": rep["ok"],
                    "families": rep["families"]})
        rep = exotic_check(branch, ls)
        out.append({"check": "exotic_spets", "branch": branch, "ok": rep["ok"],
                    "residual": rep["residual"], "total": rep["total"], "families": rep["families"]})
    if cfg.conjectures:
        cache = api.ResultCache(cfg.cache_dir)
        for system in ("H", "F"):
            for l in ls:
                items = api.conjecture_checks(system, Params.for_l(l), cache)
                out.append({"check": "conjectures", "system": system, "l": l,
                            "ok": all(i["ok"] for i in items), "items": items})
    emit(out, cfg)
    return 0 if all(r["ok"] for r in out) else 1


COMMANDS = {"weights": cmd_weights, "interpolate": cmd_interpolate, "verify": cmd_verify,
            "lie": cmd_lie, "owc": cmd_owc}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="solweights", description="Weight sums for Spin7(q) and Sol(q) fusion systems.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, l_default="1"):
        sp.add_argument("--system", choices=["H", "F", "both"], default="both")
        sp.add_argument("--l", default=l_default, help="l or l-range N..M")
        sp.add_argument("--format", choices=["csv", "json", "markdown"], default="csv")
        sp.add_argument("--output", "-o")
        sp.add_argument("--workers", type=int, default=1)
        sp.add_argument("--cache-dir", default=None, help=f"defaults to ${api.CACHE_ENV}")
        sp.add_argument("--spec", action="append", help="catalog row (repeatable)")
        sp.add_argument("--branch", choices=["1", "3", "both"], default="both")

    sp = sub.add_parser("weights", help="w_P(D,0,d) for catalog rows")
    common(sp)
    sp.add_argument("--d-offset", help="defect as '3l+6' (row family) or an absolute integer")
    sp = sub.add_parser("interpolate", help="fit rows through l = 1..a+1 and compare with the reference")
    common(sp)
    sp = sub.add_parser("verify", help="numeric comparison with the reference tables")
    common(sp, "0..1")
    sp.add_argument("--diff-only", action="store_true")
    sp = sub.add_parser("lie", help="valuation columns and k_d polynomials")
    common(sp)
    sp = sub.add_parser("owc", help="defect-count comparisons and the conjecture battery")
    common(sp, "0..4")
    sp.add_argument("--conjectures", action="store_true", help="also run the six checks (needs all rows)")
    return p


def main(argv=None) -> int:
    try:
        cfg = build_parser().parse_args(argv)
        if cfg.workers < 1:
            raise UsageError("--workers must be positive")
        return COMMANDS[cfg.command](cfg)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # computation failures
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
