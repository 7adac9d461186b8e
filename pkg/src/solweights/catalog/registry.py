"""Catalog of centric radical subgroups with their Out-actions for H and F."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from ..characters.clifford import Automorphism, CliffordIrr, Presentation
from ..weights.outgroup import OutGroup
from . import exotic, quaternion
from .extract import MonomialSubgroup
from .forms import QuadraticForm, extraspecial_presentation, isometry_automorphism
from .kmodel import KModel, build_K
from .outactions import OutRecord, SpecUnavailable, record_for
from .params import Params

SYSTEMS = ("H", "F")
EXCEPTIONS = ("R17", "R17p", "R152", "CS_EZ", "A", "CS_E")


@dataclass(frozen=True)
class SubgroupSpec:
    name: str
    display: str
    type: int
    b: int
    systems: tuple[str, ...]
    levels: str = "all"          # "all", "l>0" or "l=0"
    base: str | None = None      # quaternion row realising an l = 0 name

    def applies(self, l: int) -> bool:
        return self.levels == "all" or (self.levels == "l>0") == (l > 0)

    def log_order(self, l: int) -> int:
        return self.type * l + self.b


HF, F_, H_ = ("H", "F"), ("F",), ("H",)

_SPECS = [
    SubgroupSpec("S", "S", 3, 10, HF),
    SubgroupSpec("CS_U", "C_S(U)", 3, 9, F_),
    SubgroupSpec("CS_EZ", "C_S(E/Z)", 3, 9, HF),
    SubgroupSpec("CS_E", "C_S(E)", 3, 7, F_),
    SubgroupSpec("R1R2Q3t", "R₁R₂Q₃⟨τ⟩", 2, 9, HF, "l>0"),
    SubgroupSpec("Q1R2R3", "Q₁R₂R₃", 2, 8, H_, "l>0"),
    SubgroupSpec("Q1Q2R3", "Q₁Q₂R₃", 1, 8, HF, "l>0"),
    SubgroupSpec("Q1R2Q3", "Q₁R₂Q₃", 1, 8, H_, "l>0"),
    SubgroupSpec("Q1Q2pR3", "Q₁Q₂′R₃", 1, 8, HF, "l>0"),
    SubgroupSpec("Q1R2Q3p", "Q₁R₂Q₃′", 1, 8, H_, "l>0"),
    SubgroupSpec("Q1Q2R3t", "Q₁Q₂R₃⟨τ⟩", 1, 9, HF, "l>0"),
    SubgroupSpec("Q1Q2pR3tp", "Q₁Q₂′R₃⟨τ′⟩", 1, 9, HF, "l>0"),
    SubgroupSpec("R152", "R_{1⁵2}", 1, 7, HF, "l>0"),
    SubgroupSpec("Q1Q2Q3", "Q₁Q₂Q₃", 0, 8, HF, "l>0"),
    SubgroupSpec("Q1pQ2Q3", "Q₁′Q₂Q₃", 0, 8, HF, "l>0"),
    SubgroupSpec("Q1Q2Q3p", "Q₁Q₂Q₃′", 0, 8, H_, "l>0"),
    SubgroupSpec("Q1Q2Q3t", "Q₁Q₂Q₃⟨τ⟩", 0, 9, HF, "l>0"),
    SubgroupSpec("Q1Q2Q3pt", "Q₁Q₂Q₃′⟨τ⟩", 0, 9, HF, "l>0"),
    SubgroupSpec("R17", "R_{1⁷}", 0, 7, HF),
    SubgroupSpec("R17p", "R′_{1⁷}", 0, 6, HF),
    SubgroupSpec("A", "A", 0, 4, F_),
    SubgroupSpec("Q", "Q", 0, 8, HF, "l=0", base="Q1Q2Q3"),
    SubgroupSpec("Qt", "Q⟨τ⟩", 0, 9, HF, "l=0", base="Q1Q2Q3t"),
    SubgroupSpec("Qtp", "Q⟨τ′⟩", 0, 9, HF, "l=0", base="Q1Q2pR3tp"),
]
CATALOG = {s.name: s for s in _SPECS}


def get_spec(name: str) -> SubgroupSpec:
    try:
        return CATALOG[name]
    except KeyError:
        raise KeyError(f"unknown catalog row {name!r}") from None


def specs_for(system: str, l: int) -> list[SubgroupSpec]:
    return [s for s in _SPECS if system in s.systems and s.applies(l)]


@dataclass
class OutAction:
    system: str
    automorphisms: list[Automorphism]
    irr: CliffordIrr = field(repr=False)

    @cached_property
    def group(self) -> OutGroup:
        return OutGroup([self.irr.permutation(a) for a in self.automorphisms], len(self.irr))

    @property
    def order(self) -> int:
        return self.group.order


@dataclass
class ModelData:
    spec: SubgroupSpec
    params: Params
    pres: Presentation
    automorphisms: dict = field(default_factory=dict)   # system -> list of Automorphism
    subgroup: MonomialSubgroup | None = None
    source: str = "constructed"

    @cached_property
    def irr(self) -> CliffordIrr:
        return CliffordIrr(self.pres)

    @property
    def order(self) -> int:
        return self.pres.order

    def out(self, system: str) -> OutAction:
        if system not in self.automorphisms:
            raise SpecUnavailable(f"{self.spec.name} is not a row of {system}")
        return OutAction(system, self.automorphisms[system], self.irr)


_K_CACHE: dict[int, KModel] = {}


def model_K(p: Params) -> KModel:
    if p.q not in _K_CACHE:
        _K_CACHE[p.q] = build_K(p)
    return _K_CACHE[p.q]


def _quaternion(spec: SubgroupSpec, row: str, p: Params) -> ModelData:
    K = model_K(p)
    P = MonomialSubgroup(K, quaternion.generators(K, row), spec.name,
                         quaternion.full_blocks(row, p.l))
    auts = {}
    for system in spec.systems:
        perms = quaternion.PERMS_F if system == "F" else quaternion.PERMS_H
        good = [g for g in quaternion.normalizer_candidates(K, perms) if P.normalizes(g)]
        auts[system] = [P.automorphism(g) for g in good]
    return ModelData(spec, p, P.pres, auts, subgroup=P)


def build_S(p: Params) -> MonomialSubgroup:
    K = model_K(p)
    return MonomialSubgroup(K, quaternion.generators(K, "S"), "S", quaternion.full_blocks("S", p.l))


def _from_record(spec: SubgroupSpec, rec: OutRecord, p: Params) -> ModelData:
    model = rec.fields["model"]
    if model in CATALOG:
        base = build_subgroup(get_spec(model), Params.for_l(p.l) if p.l == 0 else p, force=True)
        auts = {s: base.automorphisms[s] for s in spec.systems if s in base.automorphisms}
        return ModelData(spec, p, base.pres, auts, source=rec.fields["provenance"])
    diag, cross = rec.form_data()
    form = QuadraticForm(len(diag), diag, cross)
    extra = len(rec.fields.get("centre", "2").split()) - 1
    pres = extraspecial_presentation(form, spec.name, extra=extra)
    auts = [isometry_automorphism(pres, g, form.n) for g in rec.matrices()]
    return ModelData(spec, p, pres, {s: auts for s in rec.systems}, source=rec.fields["provenance"])


def build_subgroup(spec: SubgroupSpec | str, p: Params, force: bool = False) -> ModelData:
    """Presentation of P with the automorphisms generating Out_D(P) for each system."""
    if isinstance(spec, str):
        spec = get_spec(spec)
    if not force and not spec.applies(p.l):
        raise SpecUnavailable(f"{spec.name} is not a catalog row at l={p.l}")
    k = p.l + 2
    if spec.base is not None:
        return _quaternion(spec, spec.base, p)
    if spec.name in quaternion.ROWS:
        return _quaternion(spec, spec.name, p)
    if spec.name == "CS_E":
        pres, auts = exotic.cs_e(k)
    elif spec.name == "CS_EZ":
        pres, auts = exotic.cs_ez(k, "point")
    elif spec.name == "A":
        pres, auts = exotic.elementary_abelian(4)
    elif spec.name == "R152":
        pres, auts = exotic.r152(p.l)
    else:
        return _from_record(spec, record_for(spec.name, p.l), p)
    return ModelData(spec, p, pres, {s: auts for s in spec.systems})


def out_index_check(spec: SubgroupSpec | str, p: Params) -> dict:
    """|Out_K(P) : Out_D(P)| for quaternion-family rows; the exception rows are flagged."""
    if isinstance(spec, str):
        spec = get_spec(spec)
    if spec.name in EXCEPTIONS:
        return {"spec": spec.name, "status": "exception", "index": None}
    row = spec.base or spec.name
    m = build_subgroup(spec, p)
    K = model_K(p)
    P = m.subgroup
    report = {"spec": spec.name, "row": row}
    ok = True
    for system in spec.systems:
        perms = quaternion.PERMS_F if system == "F" else quaternion.PERMS_H
        kgood = [g for g in quaternion.normalizer_candidates(K, perms) if P.normalizes(g)]
        out_k = OutGroup([m.irr.permutation(P.automorphism(g)) for g in kgood], len(m.irr))
        idx = out_k.order // m.out(system).order
        report[f"Out_K_{system}"] = out_k.order
        report[f"index_{system}"] = idx
        ok = ok and idx in (1, 3) and out_k.order % m.out(system).order == 0
    report["status"] = "ok" if ok else "flagged"
    return report
