"""Seifert circles, generator curves and the Seifert form.

The surface is the usual one from Seifert's algorithm: one disk per Seifert
circle (nested disks stacked, inner ones higher) joined by one half-twisted
band per crossing.  ``H_1`` of the surface is generated by the fundamental
cycles of a spanning tree of the Seifert graph, and each cycle is realised as
a simple curve that runs along disk collars and through bands.

The linking number ``lk(a, b+)`` only picks up crossings near bands: away from
them every curve follows its own collar lane, and lanes are parallel.  So the
form is a sum of local contributions, one per crossing box.  In each box the
two smoothed arcs point north, the left one at ``x = -1`` and the right one at
``x = +1``, and the curves are drawn as exact rational polylines.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction as F
from functools import lru_cache

from ..diagram import DiagramError, PlanarDiagram
from .algebra import IntMatrix

__all__ = ["SeifertData", "seifert_algorithm", "seifert_matrix"]

# a pass through a band: (crossing id, +1 left-to-right / -1 right-to-left)
Pass = tuple[int, int]


@dataclass(frozen=True, eq=False)
class SeifertData:
    """Seifert surface of a connected diagram.

    ``generator_curves`` lists, per basis curve of ``H_1``, the bands it runs
    through in order; the remaining fields are what is needed to draw those
    curves near every band.
    """

    circles: tuple[tuple[int, ...], ...]  # arcs of each Seifert circle
    sides: dict                           # crossing id -> (left circle, right circle)
    ccw: tuple[bool, ...]                 # rotation of each circle, seen from above
    generator_curves: tuple[tuple[Pass, ...], ...]
    component_count: int
    signs: dict                           # crossing id -> sign
    positions: tuple[dict, ...]           # per circle: crossing id -> index along it

    @property
    def seifert_circle_count(self) -> int:
        return len(self.circles)

    @property
    def crossing_count(self) -> int:
        return len(self.signs)

    @property
    def rank(self) -> int:
        return len(self.generator_curves)

    @property
    def genus(self) -> int:
        return (self.crossing_count - self.seifert_circle_count + 2 - self.component_count) // 2


def _circles(d: PlanarDiagram):
    """Seifert circles as arc cycles; each circle starts at its smallest arc."""
    nxt = {}
    for c in d.crossings:
        nxt[c.u_in] = c.o_out
        nxt[c.o_in] = c.u_out
    seen: set[int] = set()
    circles = []
    for a in sorted(nxt):
        if a in seen:
            continue
        cyc = []
        while a not in seen:
            seen.add(a)
            cyc.append(a)
            a = nxt[a]
        circles.append(tuple(cyc))
    return circles


def _rotations(d: PlanarDiagram, circles, circle_of_arc) -> list[bool]:
    """True for circles whose bounded side lies to their left.

    The point at infinity is put in the largest face.  A circle runs
    counter-clockwise iff that face is reached from its right-hand side
    without crossing it.
    """
    faces = d.faces
    fo = d.face_of
    outer = max(range(len(faces)), key=lambda i: (len(faces[i]), -i))
    gap_links = []
    for c in d.crossings:
        s2_in, s2_out = (c.u_in, c.u_out) if c.sign > 0 else (c.o_in, c.o_out)
        gap_links.append((fo[(s2_out, -1)], fo[(s2_in, 1)]))
    res = []
    for k, circ in enumerate(circles):
        adj: dict[int, list[int]] = {i: [] for i in range(len(faces))}
        for f1, f2 in gap_links:
            adj[f1].append(f2)
            adj[f2].append(f1)
        for a in d.arc_head:
            if circle_of_arc[a] != k:
                f1, f2 = fo[(a, 1)], fo[(a, -1)]
                adj[f1].append(f2)
                adj[f2].append(f1)
        reach = {outer}
        todo = [outer]
        while todo:
            f = todo.pop()
            for g in adj[f]:
                if g not in reach:
                    reach.add(g)
                    todo.append(g)
        left = fo[(circ[0], 1)]
        res.append(left not in reach)
    return res


def seifert_algorithm(d: PlanarDiagram) -> SeifertData:
    """Seifert circles and a basis of ``H_1`` of the Seifert surface.

    The diagram must be connected as a plane graph.
    """
    if len(d.pieces) != 1:
        raise DiagramError("Seifert surface needs a connected diagram")
    if not d.crossings:
        return SeifertData(((d.components[0].arcs[0],),), {}, (True,), (), 1, {}, ({},))
    circles = _circles(d)
    circle_of = {a: k for k, circ in enumerate(circles) for a in circ}
    sides = {}
    for c in d.crossings:
        left_arc, right_arc = (c.o_in, c.u_in) if c.sign > 0 else (c.u_in, c.o_in)
        sides[c.id] = (circle_of[left_arc], circle_of[right_arc])
    ccw = _rotations(d, circles, circle_of)
    for cid, (lc, rc) in sides.items():
        if not ccw[lc] and ccw[rc]:
            raise DiagramError(f"inconsistent circle nesting at crossing {cid}")
    gens = _fundamental_cycles(len(circles), sides)
    heads = d.arc_head
    positions = tuple({heads[a][0]: i for i, a in enumerate(circ)} for circ in circles)
    return SeifertData(tuple(circles), sides, tuple(ccw), gens, len(d.components),
                       d.signs, positions)


def _fundamental_cycles(nv: int, sides: dict) -> tuple[tuple[Pass, ...], ...]:
    adj: dict[int, list[tuple[int, int]]] = {v: [] for v in range(nv)}
    for cid in sorted(sides):
        lc, rc = sides[cid]
        adj[lc].append((cid, rc))
        adj[rc].append((cid, lc))
    parent: dict[int, tuple[int, int] | None] = {0: None}
    depth = {0: 0}
    tree = set()
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for cid, w in adj[v]:
            if w not in parent:
                parent[w] = (cid, v)
                depth[w] = depth[v] + 1
                tree.add(cid)
                queue.append(w)

    def step(cid, frm):
        return (cid, 1 if sides[cid][0] == frm else -1)

    gens = []
    for cid in sorted(sides):
        if cid in tree:
            continue
        lc, rc = sides[cid]
        # walk from rc back to lc through the tree
        up, down = [], []
        u, v = rc, lc
        while u != v:
            if depth[u] >= depth[v]:
                e, pu = parent[u]
                up.append(step(e, u))
                u = pu
            else:
                e, pv = parent[v]
                down.append(step(e, pv))
                v = pv
        gens.append(((cid, 1),) + tuple(up) + tuple(reversed(down)))
    return tuple(gens)


# ---------------------------------------------------------------------------
# curves on the surface


def _curve_layout(data: SeifertData, gen: tuple[Pass, ...]):
    """(segments by circle, passes by crossing) of one generator curve.

    A segment ``(p, q)`` on a circle runs forwards along it from band ``p``
    to band ``q``.
    """
    segs = {}
    passes = {}
    n = len(gen)
    for k, (cid, dr) in enumerate(gen):
        passes[cid] = dr
        lc, rc = data.sides[cid]
        circ = rc if dr > 0 else lc
        segs[circ] = (cid, gen[(k + 1) % n][0])
    return segs, passes


_TWIST = ((F(1), F(0)), (F(3, 5), F(4, 5)), (F(0), F(1)), (F(-3, 5), F(4, 5)), (F(-1), F(0)))
_PUSH = F(1, 97)


def _band(case: int, y: F, s: int):
    """Vertices and normals of a band core line at lane ``y``, left to right."""
    verts = []

    def twist(x0, dx, z0):
        for k, (cs, sn) in enumerate(_TWIST):
            sn = sn * s
            verts.append(((x0 + k * dx, y * cs, z0 + y * sn), (0, -sn, cs)))

    up, down = (0, 0, 1), (0, 0, -1)
    if case == 0:
        verts.append(((F(-1), y, F(0)), up))
        twist(F(-1, 2), F(1, 4), F(0))
        verts.append(((F(1), -y, F(0)), down))
    elif case == 1:
        verts.append(((F(-1), y, F(0)), down))
        verts.append(((F(-5, 4), y, F(1)), (-1, 0, 0)))
        verts.append(((F(-1), y, F(2)), up))
        twist(F(0), F(1, 8), F(2))
        verts.append(((F(1), -y, F(4)), down))
    else:
        verts.append(((F(-1), y, F(4)), up))
        twist(F(-1, 2), F(1, 8), F(2))
        verts.append(((F(1), -y, F(2)), down))
        verts.append(((F(5, 4), -y, F(1)), (-1, 0, 0)))
        verts.append(((F(1), -y, F(0)), up))
    return verts


_CASE_ROTATION = {0: (True, False), 1: (False, False), 2: (True, True)}
_CASE_HEIGHTS = {0: (0, 0), 1: (0, 4), 2: (4, 0)}


def _box_case(l_ccw: bool, r_ccw: bool) -> int:
    if l_ccw and not r_ccw:
        return 0  # disks side by side
    if not l_ccw and not r_ccw:
        return 1  # right disk nested in the left one
    return 2      # left disk nested in the right one


class _Box:
    """Geometry of one crossing box, fixed by the nesting case and the sign."""

    def __init__(self, case: int, sign: int):
        self.case = case
        l_ccw, r_ccw = _CASE_ROTATION[case]
        zl, zr = _CASE_HEIGHTS[case]
        self.z = {"L": F(zl), "R": F(zr)}
        # sheet side (+1 east) and normal (+1 up) of each disk
        self.sheet = {"L": -1 if l_ccw else 1, "R": -1 if r_ccw else 1}
        self.normal = {"L": 1 if l_ccw else -1, "R": 1 if r_ccw else -1}
        self.edge = {"L": F(-1), "R": F(1)}
        self.twist = -sign

    def collar(self, side: str, rho: F, y_end: F, role: str):
        e, z, nrm = self.edge[side], self.z[side], (0, 0, self.normal[side])
        x = e + self.sheet[side] * rho
        if role == "pass":
            pts = [(x, F(-2), z), (x, F(2), z)]
        elif role == "end":
            pts = [(x, F(-2), z), (x, y_end, z), (e, y_end, z)]
        else:
            pts = [(e, y_end, z), (x, y_end, z), (x, F(2), z)]
        return [(p, nrm) for p in pts]

    def band(self, y: F, direction: int):
        verts = _band(self.case, y, self.twist)
        return verts if direction > 0 else verts[::-1]

    def pieces(self, roles, rho: F, y: F):
        left, right, band = roles
        out = []
        if left:
            out.append(self.collar("L", rho, y, left))
        if right:
            out.append(self.collar("R", rho, -y, right))
        if band:
            out.append(self.band(y, band))
        return out


def _roles(data: SeifertData, layout, cid: int):
    """What a curve does in the box of ``cid``: (left role, right role, band)."""
    segs, passes = layout
    res = []
    for circ in data.sides[cid]:
        role = None
        if circ in segs:
            p, q = segs[circ]
            pos = data.positions[circ]
            m = len(data.circles[circ])
            if cid == p:
                role = "start"
            elif cid == q:
                role = "end"
            elif 0 < (pos[cid] - pos[p]) % m < (pos[q] - pos[p]) % m:
                role = "pass"
        res.append(role)
    return (res[0], res[1], passes.get(cid, 0))


@lru_cache(maxsize=None)
def _local(case: int, sign: int, roles_a, roles_b) -> int:
    """Signed crossings of ``a`` with the pushed-off ``b`` inside one box."""
    box = _Box(case, sign)
    pa = [[p for p, _ in piece] for piece in box.pieces(roles_a, F(1, 5), F(-1, 4))]
    pb = [_push(piece) for piece in box.pieces(roles_b, F(2, 5), F(1, 4))]
    return _crossing_sum(pa, pb)


def _push(piece):
    return [tuple(c + _PUSH * n for c, n in zip(p, nrm)) for p, nrm in piece]


def _crossing_sum(a_pieces, b_pieces) -> int:
    """Signed crossings of the projections, as in a diagram."""
    total = 0
    for pa in a_pieces:
        for pb in b_pieces:
            for i in range(len(pa) - 1):
                for j in range(len(pb) - 1):
                    total += _seg_cross(pa[i], pa[i + 1], pb[j], pb[j + 1])
    return total


def _seg_cross(p1, p2, q1, q2) -> int:
    rx, ry = p2[0] - p1[0], p2[1] - p1[1]
    sx, sy = q2[0] - q1[0], q2[1] - q1[1]
    den = rx * sy - ry * sx
    qpx, qpy = q1[0] - p1[0], q1[1] - p1[1]
    if den == 0:
        if qpx * ry - qpy * rx == 0 and (rx or ry) and _overlap(p1, p2, q1, q2):
            raise ArithmeticError("collinear curve pieces")
        return 0
    t = (qpx * sy - qpy * sx) / den
    u = (qpx * ry - qpy * rx) / den
    if t < 0 or t > 1 or u < 0 or u > 1:
        return 0
    if t in (0, 1) or u in (0, 1):
        raise ArithmeticError("curve pieces meet at a vertex")
    za = p1[2] + t * (p2[2] - p1[2])
    zb = q1[2] + u * (q2[2] - q1[2])
    if za == zb:
        raise ArithmeticError("curves intersect in space")
    (ux, uy), (ox, oy) = ((sx, sy), (rx, ry)) if za > zb else ((rx, ry), (sx, sy))
    return 1 if ux * oy - uy * ox < 0 else -1


def _overlap(p1, p2, q1, q2) -> bool:
    k = 0 if p1[0] != p2[0] else 1
    lo, hi = sorted((p1[k], p2[k]))
    lo2, hi2 = sorted((q1[k], q2[k]))
    return max(lo, lo2) < min(hi, hi2)


_EMPTY = (None, None, 0)


def seifert_matrix(data: SeifertData | PlanarDiagram) -> IntMatrix:
    """Seifert form ``V[i][j] = lk(a_i, a_j+)`` on the generator basis.

    Accepts a diagram too, as a shortcut for running :func:`seifert_algorithm`.
    """
    if isinstance(data, PlanarDiagram):
        data = seifert_algorithm(data)
    cases = {cid: (_box_case(*(data.ccw[k] for k in data.sides[cid])), sign)
             for cid, sign in data.signs.items()}
    roles = []
    for gen in data.generator_curves:
        layout = _curve_layout(data, gen)
        roles.append({cid: r for cid in cases if (r := _roles(data, layout, cid)) != _EMPTY})
    rows = []
    for ra in roles:
        row = []
        for rb in roles:
            total = sum(_local(*cases[cid], ra[cid], rb[cid]) for cid in ra.keys() & rb.keys())
            if total % 2:
                raise ArithmeticError("odd crossing count between closed curves")
            row.append(total // 2)
        rows.append(row)
    return IntMatrix.from_rows(rows) if rows else IntMatrix.zeros(0)
