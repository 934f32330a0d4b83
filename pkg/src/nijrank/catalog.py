"""Bundled Lie algebras, example structures and expected-rank table.

Two data files live next to this module: ``algebras.txt`` (one
``name  (salamon tuple)`` per line) and ``catalog.json``, which holds the
algebras given by complex structure equations together with, for every
entry, the expected status of each rank, named structures and frozen
search witnesses.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

from .acs import CoFrame, deform, standard_acs
from .exterior import KForm, LieAlgebra, check_jacobi, from_complex_frame
from .gaussian import format_gaussian, gq
from .salamon import parse_salamon
from .survey import rank_cap, verify_witness

__all__ = [
    "Catalog",
    "CatalogEntry",
    "CatalogError",
    "NamedStructure",
    "STATUSES",
    "catalog_selftest",
    "coframe_from_json",
    "coframe_to_json",
    "load_catalog",
]

DATA = Path(__file__).with_name("data")
STATUSES = ("exists", "not-exists", "unknown")


class CatalogError(ValueError):
    pass


@dataclass(frozen=True)
class NamedStructure:
    label: str
    coframe: CoFrame
    rank: int
    phi: Optional[Tuple[Tuple, ...]] = None


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    algebra: LieAlgebra
    expected: Mapping[int, str]
    structures: Tuple[NamedStructure, ...] = ()
    witnesses: Mapping[int, CoFrame] = field(default_factory=dict)
    presentation: Optional[dict] = None

    def structure(self, label: str) -> NamedStructure:
        for s in self.structures:
            if s.label == label:
                return s
        raise KeyError(f"{self.name} has no structure {label!r}")


class Catalog(list):
    """List of entries with lookup by name."""

    def get(self, name: str) -> CatalogEntry:
        for e in self:
            if e.name == name:
                return e
        raise KeyError(f"unknown catalog entry {name!r}")

    @property
    def names(self) -> List[str]:
        return [e.name for e in self]


def coframe_to_json(J: CoFrame) -> List[List[str]]:
    return [[format_gaussian(x) for x in row] for row in J.rows]


def coframe_from_json(rows) -> CoFrame:
    return CoFrame([[gq(str(x)) for x in row] for row in rows])


def _read_algebras(path: Path) -> List[Tuple[str, str]]:
    out = []
    for lineno, line in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        name, _, text = line.partition(" ")
        if not text.strip():
            raise CatalogError(f"{path.name}:{lineno}: expected 'name (tuple)'")
        out.append((name, text.strip()))
    return out


def _presentation_algebra(name: str, pres: dict) -> Tuple[LieAlgebra, CoFrame]:
    m = pres["m"]
    n = 2 * m
    forms = []
    for j in range(1, m + 1):
        terms = {tuple(t["idx"]): gq(str(t["c"])) for t in pres.get("dphi", {}).get(str(j), [])}
        forms.append(KForm(n, 2, terms))
    return from_complex_frame(m, forms, name)


def _structure(name: str, g: LieAlgebra, raw: dict) -> NamedStructure:
    m = g.dim // 2
    label = raw["label"]
    if "coframe" in raw:
        return NamedStructure(label, coframe_from_json(raw["coframe"]), int(raw["rank"]))
    if "phi" in raw:
        phi = tuple(tuple(gq(str(x)) for x in row) for row in raw["phi"])
        return NamedStructure(label, deform(standard_acs(m), phi), int(raw["rank"]), phi)
    raise CatalogError(f"{name}/{label}: a structure needs 'phi' or 'coframe'")


def load_catalog(path: Optional[str] = None, algebras: Optional[str] = None) -> Catalog:
    """Load the bundled catalog, or the given sidecar / algebra files."""
    side_path = Path(path) if path else DATA / "catalog.json"
    alg_path = Path(algebras) if algebras else DATA / "algebras.txt"
    data = json.loads(side_path.read_text(encoding="utf-8"))
    sources: Dict[str, Tuple[LieAlgebra, Optional[dict]]] = {}
    order: List[str] = []
    for name, text in _read_algebras(alg_path):
        sources[name] = (parse_salamon(text, name), None)
        order.append(name)
    for name, pres in data.get("presentations", {}).items():
        if name in sources:
            raise CatalogError(f"entry {name!r} defined twice")
        sources[name] = (_presentation_algebra(name, pres)[0], pres)
        order.append(name)
    meta = data.get("entries", {})
    unknown = set(meta) - set(sources)
    if unknown:
        raise CatalogError(f"metadata for undefined entries: {sorted(unknown)}")
    out = Catalog()
    for name in order:
        g, pres = sources[name]
        info = meta.get(name, {})
        expected = {}
        for k, status in info.get("expected", {}).items():
            if status not in STATUSES:
                raise CatalogError(f"{name}: bad status {status!r} for rank {k}")
            expected[int(k)] = status
        structures = tuple(_structure(name, g, s) for s in info.get("structures", []))
        witnesses = {int(k): coframe_from_json(rows) for k, rows in info.get("witnesses", {}).items()}
        out.append(CatalogEntry(name, g, expected, structures, witnesses, pres))
    return out


def catalog_selftest(catalog: Optional[Iterable[CatalogEntry]] = None) -> dict:
    """Re-verify every fixture; returns ``{"ok": bool, "failures": [...], ...}``."""
    catalog = load_catalog() if catalog is None else catalog
    failures: List[str] = []
    checked = 0
    for e in catalog:
        g = e.algebra
        if check_jacobi(g) is not None:
            failures.append(f"{e.name}: Jacobi identity fails")
            continue
        cap = rank_cap(g) if g.dim % 2 == 0 else -1
        for k, status in e.expected.items():
            if status == "exists" and k > cap:
                failures.append(f"{e.name}: rank {k} claimed but bound allows at most {cap}")
        for s in e.structures:
            checked += 1
            if not verify_witness(g, s.coframe, s.rank):
                failures.append(f"{e.name}/{s.label}: does not have rank {s.rank}")
            if e.expected.get(s.rank) == "not-exists":
                failures.append(f"{e.name}/{s.label}: rank {s.rank} is marked impossible")
        for k, J in e.witnesses.items():
            checked += 1
            if not verify_witness(g, J, k):
                failures.append(f"{e.name}/witness-{k}: does not have rank {k}")
            if e.expected.get(k) == "not-exists":
                failures.append(f"{e.name}/witness-{k}: rank {k} is marked impossible")
    return {"entries": len(list(catalog)), "fixtures": checked, "failures": failures, "ok": not failures}
