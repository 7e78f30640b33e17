"""Diagrams from closed polygonal curves in 3-space.

Curves are projected to the ``xy``-plane; heights decide over and under.
All arithmetic is exact, so a projection that is not generic (a crossing at a
vertex, overlapping segments, or a real intersection) raises instead of
silently producing a wrong diagram.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .diagram import DiagramError, PlanarDiagram, from_passages

__all__ = ["CrossingSite", "polylines_to_diagram", "exact_point"]

Point = tuple[Fraction, Fraction, Fraction]


def exact_point(p) -> Point:
    if len(p) == 2:
        p = (p[0], p[1], 0)
    return tuple(Fraction(str(c)) if isinstance(c, float) else Fraction(c) for c in p)


@dataclass(frozen=True)
class CrossingSite:
    id: int
    x: Fraction
    y: Fraction
    over: str
    under: str


def _cross2(ax, ay, bx, by):
    return ax * by - ay * bx


def polylines_to_diagram(curves: Mapping[str, Sequence], validate: bool = True
                         ) -> tuple[PlanarDiagram, list[CrossingSite]]:
    """Project closed polylines and read off a diagram.

    Crossing ids are assigned in order of first encounter, walking the
    components in the given order.  Also returns where each crossing is.
    """
    segs = []  # (component, index, p, q)
    for name, pts in curves.items():
        pts = [exact_point(p) for p in pts]
        if len(pts) < 3:
            raise DiagramError(f"curve {name} needs at least 3 vertices")
        for i in range(len(pts)):
            segs.append((name, i, pts[i], pts[(i + 1) % len(pts)]))

    events: dict[str, list] = {name: [] for name in curves}
    found = []
    for i in range(len(segs)):
        ni, ii, p1, p2 = segs[i]
        for j in range(i + 1, len(segs)):
            nj, jj, q1, q2 = segs[j]
            if ni == nj:
                n = len(curves[ni])
                if abs(ii - jj) in (1, n - 1):
                    continue
            hit = _intersect(p1, p2, q1, q2)
            if hit is None:
                continue
            t, u = hit
            za = p1[2] + t * (p2[2] - p1[2])
            zb = q1[2] + u * (q2[2] - q1[2])
            if za == zb:
                raise DiagramError(f"curves {ni} and {nj} intersect in space")
            key = len(found)
            found.append((i, t, j, u, za > zb))
            events[ni].append(((ii, t), key, za > zb))
            events[nj].append(((jj, u), key, zb > za))

    # number crossings by first encounter
    ids: dict[int, int] = {}
    for name in curves:
        for _, key, _ in sorted(events[name]):
            if key not in ids:
                ids[key] = len(ids) + 1
    signs = {}
    sites = []
    for key, (i, t, j, u, a_over) in enumerate(found):
        _, _, p1, p2 = segs[i]
        _, _, q1, q2 = segs[j]
        da = (p2[0] - p1[0], p2[1] - p1[1])
        db = (q2[0] - q1[0], q2[1] - q1[1])
        under, over = (db, da) if a_over else (da, db)
        signs[ids[key]] = 1 if _cross2(*under, *over) < 0 else -1
        x = p1[0] + t * (p2[0] - p1[0])
        y = p1[1] + t * (p2[1] - p1[1])
        on, un = (segs[i][0], segs[j][0]) if a_over else (segs[j][0], segs[i][0])
        sites.append(CrossingSite(ids[key], x, y, on, un))
    comps = [(name, [(ids[key], over) for _, key, over in sorted(events[name])])
             for name in curves]
    d = from_passages(comps, signs, validate=validate)
    return d, sorted(sites, key=lambda s: s.id)


def _intersect(p1, p2, q1, q2):
    rx, ry = p2[0] - p1[0], p2[1] - p1[1]
    sx, sy = q2[0] - q1[0], q2[1] - q1[1]
    den = _cross2(rx, ry, sx, sy)
    qpx, qpy = q1[0] - p1[0], q1[1] - p1[1]
    if den == 0:
        if _cross2(qpx, qpy, rx, ry) == 0:
            # collinear: any overlap is degenerate
            k = 0 if rx != 0 else 1
            lo, hi = sorted((p1[k], p2[k]))
            lo2, hi2 = sorted((q1[k], q2[k]))
            if max(lo, lo2) <= min(hi, hi2):
                raise DiagramError("collinear overlapping segments in projection")
        return None
    t = _cross2(qpx, qpy, sx, sy) / den
    u = _cross2(qpx, qpy, rx, ry) / den
    if t < 0 or t > 1 or u < 0 or u > 1:
        return None
    if t in (0, 1) or u in (0, 1):
        raise DiagramError("projection passes through a vertex")
    return t, u
