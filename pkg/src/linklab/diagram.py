"""Oriented link diagrams encoded as PD-style crossing lists.

A diagram is a tuple of crossings plus a tuple of named components.  Each
crossing carries explicit under/over in/out arc slots and a handedness, so
the cyclic order of the four slots around the crossing is fixed by the sign:

* positive: ``u_in, o_out, u_out, o_in`` counter-clockwise
* negative: ``u_in, o_in, u_out, o_out`` counter-clockwise

A positive crossing is one where the overstrand passes from left to right
when viewed along the understrand.

Internally most operations go through the *passage* form: for every
component the cyclic list of ``(crossing id, is_over)`` pairs met while
travelling along it.  Arc ``j`` of a component runs into passage ``j``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence

__all__ = [
    "Crossing",
    "Component",
    "ComponentPairTag",
    "PlanarDiagram",
    "DiagramError",
    "ParseError",
    "parse_diagram",
    "format_diagram",
    "from_passages",
    "crossing_change",
    "classify_crossing",
    "sublink",
    "is_visibly_split",
    "canonical_form",
    "canonical_pair",
    "canonical_key",
    "structurally_equal",
    "rename_components",
]


class DiagramError(ValueError):
    """Raised when an encoding violates a diagram invariant."""


class ParseError(DiagramError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class Crossing:
    id: int
    u_in: int
    o_in: int
    u_out: int
    o_out: int
    sign: int

    def ccw_slots(self) -> tuple[tuple[str, int], ...]:
        """Slots as ``(role, arc)`` in counter-clockwise order from ``u_in``."""
        if self.sign > 0:
            return (("u_in", self.u_in), ("o_out", self.o_out),
                    ("u_out", self.u_out), ("o_in", self.o_in))
        return (("u_in", self.u_in), ("o_in", self.o_in),
                ("u_out", self.u_out), ("o_out", self.o_out))

    def changed(self) -> "Crossing":
        return Crossing(self.id, u_in=self.o_in, o_in=self.u_in,
                        u_out=self.o_out, o_out=self.u_out, sign=-self.sign)


@dataclass(frozen=True)
class Component:
    name: str
    arcs: tuple[int, ...]


@dataclass(frozen=True, order=True)
class ComponentPairTag:
    """Unordered pair of component names; stored sorted."""

    first: str
    second: str

    @classmethod
    def of(cls, a: str, b: str) -> "ComponentPairTag":
        a, b = sorted((a, b))
        return cls(a, b)

    @property
    def is_self(self) -> bool:
        return self.first == self.second

    def __str__(self) -> str:
        return f"({self.first},{self.second})"


Passage = tuple[int, bool]


@dataclass(frozen=True)
class PlanarDiagram:
    crossings: tuple[Crossing, ...]
    components: tuple[Component, ...]

    # -- basic accessors -------------------------------------------------

    @property
    def arc_count(self) -> int:
        return sum(len(c.arcs) for c in self.components)

    @property
    def crossing_count(self) -> int:
        return len(self.crossings)

    @property
    def component_names(self) -> tuple[str, ...]:
        return tuple(c.name for c in self.components)

    @cached_property
    def crossing_map(self) -> dict[int, Crossing]:
        return {c.id: c for c in self.crossings}

    def crossing(self, crossing_id: int) -> Crossing:
        try:
            return self.crossing_map[crossing_id]
        except KeyError:
            raise KeyError(f"unknown crossing id {crossing_id}") from None

    def component(self, name: str) -> Component:
        for c in self.components:
            if c.name == name:
                return c
        raise KeyError(f"unknown component {name!r}")

    @cached_property
    def arc_component(self) -> dict[int, str]:
        return {a: c.name for c in self.components for a in c.arcs}

    @cached_property
    def arc_head(self) -> dict[int, tuple[int, str]]:
        """arc -> (crossing id, in-role) where the arc ends."""
        out = {}
        for c in self.crossings:
            out[c.u_in] = (c.id, "u_in")
            out[c.o_in] = (c.id, "o_in")
        return out

    @cached_property
    def arc_tail(self) -> dict[int, tuple[int, str]]:
        out = {}
        for c in self.crossings:
            out[c.u_out] = (c.id, "u_out")
            out[c.o_out] = (c.id, "o_out")
        return out

    @cached_property
    def passages(self) -> tuple[tuple[str, tuple[Passage, ...]], ...]:
        res = []
        for comp in self.components:
            seq = []
            for a in comp.arcs:
                if a in self.arc_head:
                    cid, role = self.arc_head[a]
                    seq.append((cid, role == "o_in"))
            res.append((comp.name, tuple(seq)))
        return tuple(res)

    @property
    def signs(self) -> dict[int, int]:
        return {c.id: c.sign for c in self.crossings}

    def strand_components(self, crossing_id: int) -> tuple[str, str]:
        """(component of the understrand, component of the overstrand)."""
        c = self.crossing(crossing_id)
        return self.arc_component[c.u_in], self.arc_component[c.o_in]

    # -- plane graph structure --------------------------------------------

    @cached_property
    def faces(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """Faces as cyclic tuples of half-edges ``(arc, direction)``.

        Each face lies to the left of its half-edges.  A crossingless
        component contributes two faces, one per side.
        """
        slot_index = {}
        for c in self.crossings:
            for i, (role, arc) in enumerate(c.ccw_slots()):
                slot_index[(arc, role.endswith("in"))] = (c, i)

        def successor(he):
            arc, d = he
            # arriving at the head when travelling forwards, else at the tail
            c, i = slot_index[(arc, d > 0)]
            role, nxt = c.ccw_slots()[(i - 1) % 4]
            return (nxt, 1) if role.endswith("out") else (nxt, -1)

        seen = set()
        faces = []
        for comp in self.components:
            if not any(a in self.arc_head for a in comp.arcs):
                a = comp.arcs[0]
                faces.append(((a, 1),))
                faces.append(((a, -1),))
                seen.update({(a, 1), (a, -1)})
        for arc in sorted(self.arc_head):
            for d in (1, -1):
                if (arc, d) in seen:
                    continue
                face = []
                he = (arc, d)
                while he not in seen:
                    seen.add(he)
                    face.append(he)
                    he = successor(he)
                faces.append(tuple(face))
        return tuple(faces)

    @cached_property
    def face_of(self) -> dict[tuple[int, int], int]:
        return {he: i for i, f in enumerate(self.faces) for he in f}

    @cached_property
    def pieces(self) -> tuple[frozenset[str], ...]:
        """Components grouped by connected piece of the underlying plane graph."""
        parent = {n: n for n in self.component_names}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for c in self.crossings:
            a, b = find(self.arc_component[c.u_in]), find(self.arc_component[c.o_in])
            if a != b:
                parent[a] = b
        groups: dict[str, set[str]] = {}
        for n in self.component_names:
            groups.setdefault(find(n), set()).add(n)
        return tuple(sorted((frozenset(g) for g in groups.values()), key=sorted))

    def __repr__(self) -> str:
        return (f"PlanarDiagram(crossings={self.crossing_count}, "
                f"components={list(self.component_names)})")


# ---------------------------------------------------------------------------
# construction and validation


def _validate(d: PlanarDiagram) -> None:
    names = [c.name for c in d.components]
    if len(set(names)) != len(names):
        raise DiagramError("duplicate component names")
    if not d.components:
        raise DiagramError("diagram has no components")
    ids = [c.id for c in d.crossings]
    if len(set(ids)) != len(ids):
        raise DiagramError("duplicate crossing ids")
    for c in d.crossings:
        if c.sign not in (1, -1):
            raise DiagramError(f"crossing {c.id}: sign must be +1 or -1")
        if c.u_in == c.u_out or c.o_in == c.o_out:
            raise DiagramError(f"crossing {c.id}: strand enters and leaves on the same arc")

    counts: dict[int, int] = {}
    for c in d.crossings:
        for a in (c.u_in, c.o_in, c.u_out, c.o_out):
            counts[a] = counts.get(a, 0) + 1
    declared = [a for comp in d.components for a in comp.arcs]
    if len(set(declared)) != len(declared):
        raise DiagramError("component cycles are not disjoint")
    n = len(declared)
    if set(declared) != set(range(1, n + 1)):
        raise DiagramError(f"arc labels must be exactly 1..{n}")
    for a, k in counts.items():
        if a not in set(declared):
            raise DiagramError(f"arc {a} is not in any component")
        if k != 2:
            raise DiagramError(f"arc {a} appears {k} times (expected 2)")
    heads, tails = d.arc_head, d.arc_tail
    for comp in d.components:
        free = [a for a in comp.arcs if counts.get(a, 0) == 0]
        if free:
            if len(comp.arcs) != 1:
                raise DiagramError(
                    f"component {comp.name}: arc {free[0]} meets no crossing "
                    "but the component has other arcs")
            continue
        m = len(comp.arcs)
        for j, a in enumerate(comp.arcs):
            if a not in heads or a not in tails:
                raise DiagramError(f"arc {a} must have one in-slot and one out-slot")
            cid, role = heads[a]
            c = d.crossing_map[cid]
            nxt = c.u_out if role == "u_in" else c.o_out
            if nxt != comp.arcs[(j + 1) % m]:
                raise DiagramError(
                    f"component {comp.name}: arc {a} continues as arc {nxt}, "
                    f"not {comp.arcs[(j + 1) % m]}")

    # Euler characteristic per connected piece (sphere: V - E + F = 2)
    piece_of = {}
    for i, p in enumerate(d.pieces):
        for name in p:
            piece_of[name] = i
    verts = [0] * len(d.pieces)
    faces = [0] * len(d.pieces)
    for c in d.crossings:
        verts[piece_of[d.arc_component[c.u_in]]] += 1
    for f in d.faces:
        faces[piece_of[d.arc_component[f[0][0]]]] += 1
    for i in range(len(d.pieces)):
        if verts[i] and verts[i] - 2 * verts[i] + faces[i] != 2:
            raise DiagramError("crossing data is not planar")


def make_diagram(crossings: Iterable[Crossing], components: Iterable[Component],
                 validate: bool = True) -> PlanarDiagram:
    d = PlanarDiagram(tuple(sorted(crossings, key=lambda c: c.id)), tuple(components))
    if validate:
        _validate(d)
    return d


def from_passages(comps: Sequence[tuple[str, Sequence[Passage]]],
                  signs: Mapping[int, int], validate: bool = False) -> PlanarDiagram:
    """Build a diagram from per-component passage lists.

    Arcs are numbered consecutively in component order; arc ``j`` of a
    component runs into passage ``j``.
    """
    slots: dict[int, dict[str, int]] = {}
    components = []
    label = 1
    for name, seq in comps:
        m = len(seq)
        if m == 0:
            components.append(Component(name, (label,)))
            label += 1
            continue
        arcs = tuple(range(label, label + m))
        label += m
        for j, (cid, over) in enumerate(seq):
            s = slots.setdefault(cid, {})
            pre = "o" if over else "u"
            if f"{pre}_in" in s:
                raise DiagramError(f"crossing {cid} has two {'over' if over else 'under'} passages")
            s[f"{pre}_in"] = arcs[j]
            s[f"{pre}_out"] = arcs[(j + 1) % m]
        components.append(Component(name, arcs))
    crossings = []
    for cid, s in slots.items():
        if len(s) != 4:
            raise DiagramError(f"crossing {cid} is missing a strand")
        crossings.append(Crossing(cid, s["u_in"], s["o_in"], s["u_out"], s["o_out"], signs[cid]))
    return make_diagram(crossings, components, validate=validate)


_X_RE = re.compile(
    r"^X\s+(\d+)\s+u_in=(\d+)\s+o_in=(\d+)\s+u_out=(\d+)\s+o_out=(\d+)\s+sign=([+-])\s*$")
_C_RE = re.compile(r"^C\s+([^\s:]+)\s*:((?:\s+\d+)+)\s*$")


def parse_diagram(text: str) -> PlanarDiagram:
    """Parse the line-based PD text format and validate the result."""
    crossings, components = [], []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        m = _X_RE.match(line)
        if m:
            cid, ui, oi, uo, oo = (int(g) for g in m.groups()[:5])
            if cid <= 0 or min(ui, oi, uo, oo) <= 0:
                raise ParseError("ids and arc labels must be positive", lineno)
            crossings.append(Crossing(cid, ui, oi, uo, oo, 1 if m.group(6) == "+" else -1))
            continue
        m = _C_RE.match(line)
        if m:
            arcs = tuple(int(a) for a in m.group(2).split())
            if min(arcs) <= 0:
                raise ParseError("arc labels must be positive", lineno)
            components.append(Component(m.group(1), arcs))
            continue
        raise ParseError(f"cannot parse {line!r}", lineno)
    return make_diagram(crossings, components)


def format_diagram(d: PlanarDiagram) -> str:
    lines = []
    for c in d.crossings:
        s = "+" if c.sign > 0 else "-"
        lines.append(f"X {c.id} u_in={c.u_in} o_in={c.o_in} u_out={c.u_out} "
                     f"o_out={c.o_out} sign={s}")
    for comp in d.components:
        lines.append(f"C {comp.name}: " + " ".join(str(a) for a in comp.arcs))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# canonical form


def _component_code(seq, start, labels, counter, signs, bound=None):
    """Code of ``seq`` read from ``start``; None as soon as it exceeds ``bound``."""
    code = []
    labels = dict(labels)
    m = len(seq)
    tight = bound is not None
    for k in range(m):
        cid, over = seq[(start + k) % m]
        lab = labels.get(cid)
        if lab is None:
            counter += 1
            lab = labels[cid] = counter
        item = (lab, over, signs[cid])
        if tight:
            b = bound[k]
            if item > b:
                return None
            if item < b:
                tight = False
        code.append(item)
    return tuple(code), labels, counter


def _canonical(d: PlanarDiagram):
    signs = d.signs
    comps = sorted(d.passages, key=lambda p: p[0])
    states = [({}, 0, (), ())]  # labels, counter, code, starts
    for name, seq in comps:
        best = None
        nxt = []
        for labels, counter, code, starts in states:
            if not seq:
                nxt.append((labels, counter, code + ((name, ()),), starts + (0,)))
                best = ()
                continue
            for s in range(len(seq)):
                cand = _component_code(seq, s, labels, counter, signs, best)
                if cand is None:
                    continue
                key = cand[0]
                if best is None or key < best:
                    best, nxt = key, []
                nxt.append((cand[1], cand[2], code + ((name, key),), starts + (s,)))
        states = nxt
    labels, _, code, starts = states[0]
    return code, labels, starts, comps


def canonical_key(d: PlanarDiagram) -> tuple:
    """Hashable key; equal keys mean structurally equal diagrams."""
    return _canonical(d)[0]


def canonical_pair(d: PlanarDiagram) -> tuple[PlanarDiagram, tuple]:
    """``(canonical_form(d), canonical_key(d))`` with one traversal."""
    code, labels, starts, comps = _canonical(d)
    new = []
    for (name, seq), s in zip(comps, starts):
        m = len(seq)
        new.append((name, [(labels[seq[(s + k) % m][0]], seq[(s + k) % m][1]) for k in range(m)]))
    signs = {labels[c.id]: c.sign for c in d.crossings}
    return from_passages(new, signs), code


def canonical_form(d: PlanarDiagram) -> PlanarDiagram:
    """Relabel arcs and crossings by traversal from the least component name."""
    return canonical_pair(d)[0]


def structurally_equal(a: PlanarDiagram, b: PlanarDiagram) -> bool:
    return canonical_key(a) == canonical_key(b)


def rename_components(d: PlanarDiagram, mapping: Mapping[str, str]) -> PlanarDiagram:
    comps = [Component(mapping.get(c.name, c.name), c.arcs) for c in d.components]
    return make_diagram(d.crossings, comps, validate=False)


# ---------------------------------------------------------------------------
# operations


def crossing_change(d: PlanarDiagram, crossing_id: int) -> PlanarDiagram:
    """Exchange the over- and understrand at one crossing."""
    target = d.crossing(crossing_id)
    crossings = [c.changed() if c is target else c for c in d.crossings]
    return make_diagram(crossings, d.components, validate=False)


def classify_crossing(d: PlanarDiagram, crossing_id: int) -> ComponentPairTag:
    under, over = d.strand_components(crossing_id)
    return ComponentPairTag.of(under, over)


def sublink(d: PlanarDiagram, keep: Iterable[str]) -> PlanarDiagram:
    """Delete every component not in ``keep``; result is in canonical form."""
    keep = set(keep)
    if not keep:
        raise DiagramError("sublink needs at least one component")
    unknown = keep - set(d.component_names)
    if unknown:
        raise KeyError(f"unknown component(s) {sorted(unknown)}")
    alive = {c.id for c in d.crossings
             if set(d.strand_components(c.id)) <= keep}
    comps = [(name, [p for p in seq if p[0] in alive])
             for name, seq in d.passages if name in keep]
    return canonical_form(from_passages(comps, d.signs))


def is_visibly_split(d: PlanarDiagram) -> tuple[frozenset[str], ...]:
    """Partition of components by connected piece of the plane graph.

    One piece means the diagram is connected.  Two or more pieces certify
    that the link is split (the converse does not hold).
    """
    return d.pieces
