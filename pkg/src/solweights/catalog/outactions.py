"""Loader for the Out-actions shipped as data (R_{1^7}, R'_{1^7})."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from importlib import resources

import numpy as np


class SpecUnavailable(LookupError):
    pass


class DataIntegrityError(ValueError):
    pass


@dataclass
class OutRecord:
    name: str
    fields: dict = field(default_factory=dict)

    @property
    def systems(self) -> tuple[str, ...]:
        return tuple(self.fields["systems"].split(","))

    def applies(self, l: int) -> bool:
        lev = self.fields.get("levels", "all")
        return lev == "all" or (lev == "l=0" and l == 0) or (lev == "l>0" and l > 0)

    def matrices(self) -> list[np.ndarray]:
        out = []
        for g in self.fields.get("out_gens", "").split(";"):
            rows = g.split()
            if rows:
                out.append(np.array([[int(c) for c in row] for row in rows], dtype=np.int64))
        return out

    def form_data(self):
        diag = [int(v) for v in self.fields["form_diag"].split()]
        cross = [tuple(int(v) for v in pair.split("-")) for pair in self.fields["form_cross"].split()]
        return diag, cross


def parse(text: str) -> list[OutRecord]:
    records, body, checksum = [], [], None
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("checksum"):
            checksum = line.split("=", 1)[1].strip()
            break
        body.append(line)
        if line.startswith("[") and line.endswith("]"):
            records.append(OutRecord(line[1:-1]))
        else:
            key, value = (s.strip() for s in line.split("=", 1))
            records[-1].fields[key] = value
    digest = hashlib.sha256("\n".join(body).encode()).hexdigest()
    if checksum != digest:
        raise DataIntegrityError("outactions.dat checksum mismatch")
    return records


def load(text: str | None = None) -> list[OutRecord]:
    if text is None:
        try:
            text = resources.files("solweights.data").joinpath("catalog/outactions.dat").read_text("utf-8")
        except FileNotFoundError as exc:
            raise SpecUnavailable("outactions.dat is missing") from exc
    return parse(text)


def record_for(name: str, l: int, records=None) -> OutRecord:
    for rec in records if records is not None else load():
        if rec.name == name and rec.applies(l):
            return rec
    raise SpecUnavailable(f"no Out-action record for {name} at l={l}")
