"""Named diagrams shipped with the package, checked every time they load.

Each entry is a PD file in the data directory plus a record in
``manifest.json`` listing designated crossings and the properties the entry
must have.  ``load`` recomputes every property and raises
:class:`CatalogError` on the first mismatch, so a damaged file cannot be used
silently.  Set ``LINKLAB_CATALOG_DIR`` to load from another directory.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

from .diagram import (
    PlanarDiagram,
    canonical_key,
    classify_crossing,
    crossing_change,
    parse_diagram,
    rename_components,
    sublink,
)
from .invariants import (
    alexander_polynomial,
    component_determinant,
    linking_numbers,
    seifert_matrix,
)
from .obstructions import Witness
from .search import SearchBudget, simplify

__all__ = ["CatalogEntry", "CatalogError", "catalog_dir", "names", "load",
           "paper_witnesses", "resolve_crossing"]

NAMES = ("unknot0", "unknot_kinked", "trefoil", "figure8", "hopf_pos",
         "two_unknots_split", "paper_L", "paper_bandsum_K12", "paper_bandsum_K13")


class CatalogError(RuntimeError):
    pass


@dataclass(frozen=True)
class PropertyCheck:
    name: str
    expected: object
    actual: object

    @property
    def passed(self) -> bool:
        return self.expected == self.actual

    def to_json(self) -> dict:
        return {"name": self.name, "expected": self.expected, "actual": self.actual,
                "passed": self.passed}


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    diagram: PlanarDiagram
    description: str = ""
    designated: dict = field(default_factory=dict)
    certified_properties: tuple[PropertyCheck, ...] = ()

    def to_json(self) -> dict:
        return {"name": self.name, "description": self.description,
                "crossings": self.diagram.crossing_count,
                "components": list(self.diagram.component_names),
                "designated": dict(self.designated),
                "certified_properties": [c.to_json() for c in self.certified_properties]}


def catalog_dir() -> Path:
    env = os.environ.get("LINKLAB_CATALOG_DIR")
    return Path(env) if env else Path(__file__).resolve().parent / "data"


def _manifest(root: Path) -> dict:
    path = root / "manifest.json"
    try:
        return json.loads(path.read_text())
    except FileNotFoundError:
        raise CatalogError(f"no manifest at {path}") from None
    except json.JSONDecodeError as e:
        raise CatalogError(f"{path}: {e}") from None


def names() -> tuple[str, ...]:
    return NAMES


def resolve_crossing(entry: CatalogEntry, ref) -> int:
    """Crossing id from an integer or a designated name such as ``clasp_L1``."""
    if isinstance(ref, int):
        return ref
    if ref in entry.designated:
        return entry.designated[ref]
    try:
        return int(ref)
    except ValueError:
        raise KeyError(f"{entry.name} has no designated crossing {ref!r}") from None


def _pair(key: str) -> tuple[str, str]:
    a, b = key.split(",")
    return tuple(sorted((a.strip(), b.strip())))


def _certify(name: str, d: PlanarDiagram, designated: dict, checks: dict) -> list[PropertyCheck]:
    out = []
    budget = SearchBudget()

    def ids(refs):
        return [designated[r] if isinstance(r, str) else r for r in refs]

    for kind, want in sorted(checks.items()):
        if kind == "crossings":
            out.append(PropertyCheck("crossings", want, d.crossing_count))
        elif kind == "determinants":
            got = {c: component_determinant(d, c) for c in want}
            out.append(PropertyCheck("component determinants", want, got))
        elif kind == "alexander":
            got = {c: str(alexander_polynomial(sublink(d, [c]))) for c in want}
            out.append(PropertyCheck("component Alexander polynomials", want, got))
        elif kind == "linking":
            lk = linking_numbers(d)
            got = {k: lk[_pair(k)] for k in want}
            out.append(PropertyCheck("pairwise linking numbers", want, got))
        elif kind == "visibly_split":
            out.append(PropertyCheck("visibly split", want,
                                     len(d.pieces) == len(d.components)))
        elif kind == "connected_knot":
            got = len(d.components) == 1 and len(d.pieces) == 1
            out.append(PropertyCheck("connected knot diagram", want, got))
        elif kind == "seifert_matrix_size":
            out.append(PropertyCheck("Seifert matrix size", want, seifert_matrix(d).rows))
        elif kind == "split_after":
            (cid,) = ids(want["changes"])
            tag = str(classify_crossing(d, cid))
            s = simplify(crossing_change(d, cid), budget,
                         goal=lambda x: len(x.pieces) == len(x.components))
            out.append(PropertyCheck(f"tag of {want['changes'][0]}", want["tag"], tag))
            out.append(PropertyCheck(f"changing {want['changes'][0]} splits", True,
                                     len(s.pieces) == len(s.components)))
        elif kind == "unlink_after":
            cur = d
            for cid in ids(want["changes"]):
                cur = crossing_change(cur, cid)
            s = simplify(cur, budget)
            label = " and ".join(want["changes"])
            out.append(PropertyCheck(f"changing {label} gives the unlink", 0, s.crossing_count))
        elif kind == "isotopic_sublinks":
            a = sublink(d, want["a"])
            b = rename_components(sublink(d, want["b"]), want["rename"])
            out.append(PropertyCheck(
                f"sublinks {{{','.join(want['a'])}}} and {{{','.join(want['b'])}}} match",
                True, canonical_key(a) == canonical_key(b)))
        else:
            raise CatalogError(f"{name}: unknown check {kind!r}")
    return out


def _read(name: str, root: Path) -> tuple[str, str, str]:
    if name not in NAMES:
        raise KeyError(f"unknown catalog entry {name!r}; known: {', '.join(NAMES)}")
    rec = _manifest(root).get(name)
    if rec is None:
        raise CatalogError(f"{name} is missing from the manifest")
    path = root / rec["file"]
    try:
        text = path.read_text()
    except OSError as e:
        raise CatalogError(f"{name}: cannot read {path}: {e}") from None
    return str(path), text, json.dumps(rec, sort_keys=True)


# keyed on file contents, so an edited file is always certified again
@lru_cache(maxsize=None)
def _certified(name: str, path: str, text: str, record: str) -> CatalogEntry:
    rec = json.loads(record)
    try:
        d = parse_diagram(text)
    except ValueError as e:
        raise CatalogError(f"{name}: {path} does not parse: {e}") from None
    designated = dict(rec.get("designated", {}))
    try:
        checks = _certify(name, d, designated, rec.get("checks", {}))
    except (KeyError, ValueError) as e:
        raise CatalogError(f"{name}: certification could not run: {e}") from None
    failed = [c for c in checks if not c.passed]
    if failed:
        msg = "; ".join(f"{c.name}: expected {c.expected}, got {c.actual}" for c in failed)
        raise CatalogError(f"{name} failed certification: {msg}")
    return CatalogEntry(name, d, rec.get("description", ""), designated, tuple(checks))


def load(name: str) -> CatalogEntry:
    """Load and certify one entry."""
    return _certified(name, *_read(name, catalog_dir()))


def paper_witnesses() -> list[Witness]:
    """Band-sum witnesses for the two 2-component sublinks of ``paper_L``
    that contain ``L1``, tied to the sublinks they were built from."""
    d = load("paper_L").diagram
    out = []
    for other, knot in (("L2", "paper_bandsum_K12"), ("L3", "paper_bandsum_K13")):
        subset = ("L1", other)
        out.append(Witness(subset, load(knot).diagram, sublink(d, subset),
                           "K1" + other[1]))
    return out
