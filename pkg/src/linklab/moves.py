"""Reidemeister moves on planar diagrams.

Moves are described by :class:`Move` values that carry enough data to be
replayed on the diagram they were listed for.  Listing order is fixed:
``R1-``, ``R2-``, ``R3``, ``R1+``, ``R2+``; inside a kind, moves are sorted
by their arguments.  Crossing ids of untouched crossings are preserved by
every move; new crossings take the next free ids.
"""

from __future__ import annotations

from dataclasses import dataclass

from .diagram import DiagramError, PlanarDiagram, from_passages

__all__ = ["Move", "MoveError", "reidemeister_moves", "apply_move"]

KIND_ORDER = {"R1-": 0, "R2-": 1, "R3": 2, "R1+": 3, "R2+": 4}

HalfEdge = tuple[int, int]


class MoveError(DiagramError):
    pass


@dataclass(frozen=True)
class Move:
    """A Reidemeister move.

    ``args`` by kind:

    * ``R1-``: ``(crossing,)``
    * ``R1+``: ``(arc, first_pass_over, sign)``
    * ``R2-``: ``(c1, c2, half_edge)`` with ``half_edge`` on the bigon
    * ``R2+``: ``(half_edge_1, half_edge_2, first_over)``; the arc of the
      first half-edge is pushed across the second one, inside their common face
    * ``R3``: ``(c1, c2, c3, half_edge)`` with ``half_edge`` on the triangle
    """

    kind: str
    args: tuple

    def sort_key(self):
        return (KIND_ORDER[self.kind], self.args)

    @property
    def crossing_delta(self) -> int:
        return {"R1-": -1, "R2-": -2, "R3": 0, "R1+": 1, "R2+": 2}[self.kind]

    def to_json(self) -> dict:
        return {"kind": self.kind, "args": _jsonable(self.args)}


def _jsonable(x):
    if isinstance(x, tuple):
        return [_jsonable(v) for v in x]
    return x


def _arc_positions(d: PlanarDiagram):
    """arc -> (component index, passage index the arc runs into)."""
    pos = {}
    for k, comp in enumerate(d.components):
        for j, a in enumerate(comp.arcs):
            pos[a] = (k, j)
    return pos


def _ends(d: PlanarDiagram, arc: int):
    """(tail crossing, over at tail, head crossing, over at head)."""
    tc, tr = d.arc_tail[arc]
    hc, hr = d.arc_head[arc]
    return tc, tr == "o_out", hc, hr == "o_in"


def _r1_remove(d):
    out = []
    for face in d.faces:
        if len(face) == 1 and face[0][0] in d.arc_head:
            arc = face[0][0]
            out.append(Move("R1-", (d.arc_head[arc][0],)))
    return sorted(set(out), key=Move.sort_key)


def _r2_remove(d):
    out = []
    for face in d.faces:
        if len(face) != 2:
            continue
        (a1, _), (a2, _) = face
        if a1 == a2 or a1 not in d.arc_head:
            continue
        t1, ot1, h1, oh1 = _ends(d, a1)
        if t1 == h1 or ot1 != oh1:
            continue
        c1, c2 = sorted((t1, h1))
        out.append(Move("R2-", (c1, c2, min(face))))
    return out


def _r3(d):
    out = []
    for face in d.faces:
        if len(face) != 3:
            continue
        arcs = [he[0] for he in face]
        if len(set(arcs)) != 3:
            continue
        ends = [_ends(d, a) for a in arcs]
        cs = {e[0] for e in ends} | {e[2] for e in ends}
        if len(cs) != 3 or any(e[0] == e[2] for e in ends):
            continue
        if any(e[1] == e[3] for e in ends):
            out.append(Move("R3", tuple(sorted(cs)) + (min(face),)))
    return out


def _r1_add(d):
    out = []
    for comp in d.components:
        for a in comp.arcs:
            for over in (False, True):
                for sign in (1, -1):
                    out.append(Move("R1+", (a, over, sign)))
    return out


def _r2_add(d):
    out = []
    for face in d.faces:
        if len(face) == 1:
            he = face[0]
            if he[0] not in d.arc_head:  # crossingless loop: finger onto itself
                for over in (False, True):
                    out.append(Move("R2+", (he, he, over)))
            continue
        hes = sorted(face)
        for i in range(len(hes)):
            for j in range(i + 1, len(hes)):
                if hes[i][0] == hes[j][0]:
                    continue
                for over in (False, True):
                    out.append(Move("R2+", (hes[i], hes[j], over)))
    return out


def reidemeister_moves(d: PlanarDiagram, adds: bool = True) -> list[Move]:
    """All applicable moves in canonical order.

    With ``adds=False`` only crossing-preserving or -reducing moves are listed.
    """
    moves = _r1_remove(d) + _r2_remove(d) + _r3(d)
    if adds:
        moves += _r1_add(d) + _r2_add(d)
    return sorted(moves, key=Move.sort_key)


def _next_id(d: PlanarDiagram) -> int:
    return max((c.id for c in d.crossings), default=0) + 1


def apply_move(d: PlanarDiagram, m: Move) -> PlanarDiagram:
    """Apply ``m`` to ``d``; raises :class:`MoveError` if it does not fit."""
    comps = [(name, list(seq)) for name, seq in d.passages]
    signs = d.signs
    pos = _arc_positions(d)

    if m.kind == "R1-":
        (cid,) = m.args
        if Move("R1-", (cid,)) not in _r1_remove(d):
            raise MoveError(f"no removable kink at crossing {cid}")
        for _, seq in comps:
            if any(p[0] == cid for p in seq):
                seq[:] = [p for p in seq if p[0] != cid]
        del signs[cid]

    elif m.kind == "R1+":
        arc, over, sign = m.args
        if arc not in pos or sign not in (1, -1):
            raise MoveError(f"cannot add a kink on arc {arc}")
        k, j = pos[arc]
        new = _next_id(d)
        comps[k][1][j:j] = [(new, bool(over)), (new, not over)]
        signs[new] = sign

    elif m.kind == "R2-":
        c1, c2, he = m.args
        face_i = d.face_of.get(he)
        if face_i is None or m not in _r2_remove(d):
            raise MoveError("no removable bigon there")
        for _, seq in comps:
            seq[:] = [p for p in seq if p[0] not in (c1, c2)]
        del signs[c1], signs[c2]

    elif m.kind == "R3":
        if m not in _r3(d):
            raise MoveError("no R3 triangle there")
        face = d.faces[d.face_of[m.args[3]]]
        for arc, _ in face:
            k, j = pos[arc]
            seq = comps[k][1]
            i = (j - 1) % len(seq)
            seq[i], seq[j] = seq[j], seq[i]

    elif m.kind == "R2+":
        h1, h2, over = m.args
        if h1 not in d.face_of or h2 not in d.face_of or d.face_of[h1] != d.face_of[h2]:
            raise MoveError("half-edges do not share a face")
        (a1, d1), (a2, d2) = h1, h2
        a_id, b_id = _next_id(d), _next_id(d) + 1
        s = d1 * d2 if over else -d1 * d2
        signs[a_id], signs[b_id] = s, -s
        finger = [(a_id, bool(over)), (b_id, bool(over))]
        target = [(b_id, not over), (a_id, not over)]
        if h1 == h2:
            if a1 in d.arc_head:
                raise MoveError("self finger move only on crossingless loops")
            seq = finger + target
            if d1 < 0:
                seq.reverse()
            comps[pos[a1][0]][1][:] = seq
        else:
            if a1 == a2:
                raise MoveError("finger move between the two sides of one arc")
            ins1 = finger if d1 > 0 else finger[::-1]
            ins2 = target if d2 > 0 else target[::-1]
            (k1, j1), (k2, j2) = pos[a1], pos[a2]
            # insert at the later position first so indices stay valid
            for k, j, ins in sorted([(k1, j1, ins1), (k2, j2, ins2)], reverse=True):
                comps[k][1][j:j] = ins
    else:
        raise MoveError(f"unknown move kind {m.kind!r}")

    return from_passages([(n, s) for n, s in comps], signs)
