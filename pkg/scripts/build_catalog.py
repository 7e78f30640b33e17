"""Regenerate the PD files in src/linklab/data from explicit 3D models.

Every catalog diagram is drawn here as closed polylines and read off by
``linklab.geometry``.  The big link is three "clasped strips": each component
is the boundary of a long strip whose two ends hook each other.  A strip with
no twist gives an unknot; with a full twist it gives a trefoil.  The strip of
the unknot L1 hooks the strip of L2 and, at its other end, that of L3.  L3 is
L2 turned half way round the origin, so {L1,L2} and {L1,L3} look the same.

    python scripts/build_catalog.py [--check]

With ``--check`` nothing is written; the script fails if any file would change.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections import deque
from fractions import Fraction as F
from pathlib import Path

from linklab.diagram import canonical_pair, format_diagram, from_passages
from linklab.geometry import polylines_to_diagram
from linklab.invariants import alexander_polynomial, seifert_algorithm
from linklab.moves import apply_move, reidemeister_moves

DATA = Path(__file__).resolve().parents[1] / "src" / "linklab" / "data"

HALF = F(1, 2)


def _unit(a, b):
    dx, dy = b[0] - a[0], b[1] - a[1]
    if dx and dy:
        raise ValueError("strip edges must be axis-aligned")
    n = abs(dx) + abs(dy)
    return (dx / n, dy / n)


def _left(u):
    return (-u[1], u[0])


def clasped_strip(core, gap_at, twist=0, clasp=1, width=1):
    """Boundary of a strip along the closed ``core`` polygon, cut open on the
    first edge ``gap_at`` units after its first vertex and clasped there.

    ``twist`` (-1, 0, 1) puts a full twist right after the clasp; ``clasp``
    (+1/-1) picks which way the two ends hook.
    """
    core = [tuple(F(c) for c in p) for p in core]
    if len(core[0]) == 2:
        core = [p + (F(0),) for p in core]
    e = F(width) / 2
    v0, v1 = core[0], core[1]
    u = _unit(v0, v1)
    n = _left(u)
    length = abs(v1[0] - v0[0]) + abs(v1[1] - v0[1])
    gap = F(gap_at)

    def at(s, t, dz=0):
        r = (gap + s) / length
        z = v0[2] + r * (v1[2] - v0[2])
        return (v0[0] + (gap + s) * u[0] + t * n[0],
                v0[1] + (gap + s) * u[1] + t * n[1], z + dz)

    # core path from A (after the clasp) round to B (before it)
    path = [at(4 * e, 0)] + core[1:] + [core[0], at(-2 * e, 0)]
    path = [p[:2] + (p[2],) for p in path]

    def offset(sign):
        out = []
        for i, p in enumerate(path):
            if i == 0:
                nrm = _left(_unit(path[0], path[1]))
                off = (nrm[0] * e * sign, nrm[1] * e * sign)
            elif i == len(path) - 1:
                nrm = _left(_unit(path[-2], path[-1]))
                off = (nrm[0] * e * sign, nrm[1] * e * sign)
            else:
                a = _left(_unit(path[i - 1], p))
                b = _left(_unit(p, path[i + 1]))
                k = e * sign / (1 + a[0] * b[0] + a[1] * b[1])
                off = ((a[0] + b[0]) * k, (a[1] + b[1]) * k)
            out.append((p[0] + off[0], p[1] + off[1], p[2]))
        return out

    left, right = offset(1), offset(-1)
    # narrow start finger
    left = [at(-e, e / 2), at(2 * e, e / 2)] + left
    right = [at(-e, -e / 2), at(2 * e, -e / 2)] + right
    if twist:
        h = twist
        lt = [at(5 * e, e, h), at(7 * e, -e), at(9 * e, e, -h)]
        rt = [at(5 * e, -e, -h), at(7 * e, e), at(9 * e, -e, h)]
        left = left[:3] + lt + left[3:]
        right = right[:3] + rt + right[3:]
    # end finger reaches over the start finger; its tip makes the clasp
    tip = [at(e, e, 2 * clasp), at(e, -e, -2 * clasp)]
    return left + tip + right[::-1]


def rotate_half(curve):
    return [(-x, -y, z) for x, y, z in curve]


def splice(pts, arrive, depart):
    """Open ``pts`` between two points on one of its segments.

    The curve must pass ``arrive`` then ``depart``; returns the path from
    ``depart`` round to ``arrive``.
    """
    arrive = tuple(F(c) for c in arrive)
    depart = tuple(F(c) for c in depart)
    m = len(pts)
    for i in range(m):
        p, q = pts[i], pts[(i + 1) % m]
        if _on_segment(arrive[:2], p, q) and _on_segment(depart[:2], p, q):
            za = _z_on(arrive[:2], p, q)
            zd = _z_on(depart[:2], p, q)
            rest = [pts[(i + 1 + k) % m] for k in range(m)]
            return [depart[:2] + (zd,)] + rest + [arrive[:2] + (za,)]
    raise ValueError("points are not on a common segment")


def _on_segment(x, p, q):
    cross = (q[0] - p[0]) * (x[1] - p[1]) - (q[1] - p[1]) * (x[0] - p[0])
    if cross:
        return False
    dot = (x[0] - p[0]) * (q[0] - p[0]) + (x[1] - p[1]) * (q[1] - p[1])
    return 0 < dot < (q[0] - p[0]) ** 2 + (q[1] - p[1]) ** 2


def _z_on(x, p, q):
    k = 0 if q[0] != p[0] else 1
    r = (x[k] - p[k]) / (q[k] - p[k])
    return p[2] + r * (q[2] - p[2])


# ---------------------------------------------------------------------------
# the three-component link

L1_CORE = [(-10, -1, 1), (10, -1, -1), (F(25, 2), -1, -1), (F(25, 2), 1, 1),
           (10, 1, 1), (-10, 1, -1), (F(-25, 2), 1, -1), (F(-25, 2), -1, 1)]
L2_CORE = [(20, 4), (11, 4), (11, -4), (20, -4)]


def three_component_curves(l1_clasp=1, l2_twist=1, l2_clasp=-1):
    l1 = clasped_strip(L1_CORE, 10, twist=0, clasp=l1_clasp)
    l2 = clasped_strip(L2_CORE, 2, twist=l2_twist, clasp=l2_clasp)
    return {"L1": l1, "L2": l2, "L3": rotate_half(l2)}


def band_sum_curves(curves, which):
    """Knot from L1 and ``which`` joined by a short band outside both strips."""
    l1 = curves["L1"]
    other = curves[which]
    if which == "L2":
        a1, d1 = (F(44, 5), F(3, 2)), (F(46, 5), F(3, 2))
        a2, d2 = (F(21, 2), F(14, 5)), (F(21, 2), F(16, 5))
    else:
        a1, d1 = (F(-44, 5), F(-3, 2)), (F(-46, 5), F(-3, 2))
        a2, d2 = (F(-21, 2), F(-14, 5)), (F(-21, 2), F(-16, 5))
    p1 = splice(l1, a1, d1)
    p2 = splice(other, a2, d2)
    return {"K": p1 + p2}


# ---------------------------------------------------------------------------
# small diagrams, given by their passages (crossing, over?) along each component

def _code(*word):
    """``"O1 U2 ..."`` style Gauss word to passages."""
    return [(int(w[1:]), w[0] == "O") for w in word]


SMALL = {
    "unknot0": ([("K", [])], {}, "round unknot without crossings"),
    "unknot_kinked": ([("K", _code("O1", "U1"))], {1: 1}, "unknot with one kink"),
    "trefoil": ([("K", _code("O1", "U2", "O3", "U1", "O2", "U3"))], {1: 1, 2: 1, 3: 1},
                "standard trefoil"),
    "figure8": ([("K", _code("O1", "U2", "O3", "U4", "O2", "U1", "O4", "U3"))],
                {1: 1, 2: 1, 3: -1, 4: -1}, "figure-eight knot"),
    "hopf_pos": ([("A", _code("O1", "U2")), ("B", _code("U1", "O2"))], {1: 1, 2: 1},
                 "positive Hopf link"),
    "two_unknots_split": ([("A", _code("O1", "U1")), ("B", _code("O2", "U2"))], {1: 1, 2: -1},
                          "two kinked unknots side by side"),
}

# what loading each entry must confirm
CHECKS = {
    "unknot0": {"crossings": 0, "determinants": {"K": 1}},
    "unknot_kinked": {"crossings": 1, "determinants": {"K": 1}},
    "trefoil": {"crossings": 3, "determinants": {"K": 3}, "alexander": {"K": "t^2 - t + 1"}},
    "figure8": {"crossings": 4, "determinants": {"K": 5}, "alexander": {"K": "t^2 - 3t + 1"}},
    "hopf_pos": {"crossings": 2, "determinants": {"A": 1, "B": 1}, "linking": {"A,B": 1}},
    "two_unknots_split": {"determinants": {"A": 1, "B": 1}, "linking": {"A,B": 0},
                          "visibly_split": True},
    "paper_L": {
        "determinants": {"L1": 1, "L2": 3, "L3": 3},
        "linking": {"L1,L2": 0, "L1,L3": 0, "L2,L3": 0},
        "split_after": {"changes": ["clasp_L1"], "tag": "(L1,L1)"},
        "unlink_after": {"changes": ["clasp_L2", "clasp_L3"]},
        "isotopic_sublinks": {"a": ["L1", "L2"], "b": ["L1", "L3"],
                              "rename": {"L2": "L3", "L3": "L2"}},
    },
    "paper_bandsum_K12": {"connected_knot": True, "determinants": {"K": 13},
                          "seifert_matrix_size": 4},
    "paper_bandsum_K13": {"connected_knot": True, "determinants": {"K": 13},
                          "seifert_matrix_size": 4},
}


def thin_surface(d, limit=5000):
    """Diagram of the same knot whose Seifert surface has the least genus
    allowed by the Alexander polynomial, found by breadth-first search over
    moves that do not add crossings.  Returns ``d`` if none is found."""
    target = alexander_polynomial(d).high // 2
    start, key = canonical_pair(d)
    seen = {key}
    queue = deque([start])
    while queue and len(seen) < limit:
        x = queue.popleft()
        if seifert_algorithm(x).genus == target:
            return x
        for m in reidemeister_moves(x, adds=False):
            y, k = canonical_pair(apply_move(x, m))
            if k not in seen:
                seen.add(k)
                queue.append(y)
    return d


def build_all():
    entries = {}

    def add(name, d, designated=None, note=""):
        entries[name] = (d, designated or {}, note)

    for name, (comps, signs, note) in SMALL.items():
        add(name, from_passages(comps, signs, validate=True), None, note)

    curves = three_component_curves()

    def near(sites, x, y):
        return min(sites, key=lambda s: (s.x - x) ** 2 + (s.y - y) ** 2).id

    d, sites = polylines_to_diagram(curves)
    add("paper_L", d, {
        "clasp_L1": near(sites, HALF, F(-3, 4)),
        "clasp_L2": near(sites, F(35, 2), F(15, 4)),
        "clasp_L3": near(sites, F(-35, 2), F(-15, 4)),
    }, "unknot L1 whose strip hooks the strips of the trefoils L2 and L3")
    for other, note in (("L2", "band sum of L1 and L2 along a band missing both strips"),
                        ("L3", "band sum of L1 and L3, the rotated copy of K12")):
        k = polylines_to_diagram(band_sum_curves(curves, other))[0]
        add("paper_bandsum_K1" + other[1], thin_surface(k), None,
            note + ", moved to a diagram with a genus 2 Seifert surface")
    return entries


def manifest(entries):
    out = {}
    for name, (d, designated, note) in entries.items():
        out[name] = {"file": f"{name}.pd", "description": note,
                     "designated": designated, "checks": CHECKS[name]}
    return json.dumps(out, indent=2, sort_keys=True) + "\n"


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--check", action="store_true")
    args = ap.parse_args(argv)
    entries = build_all()
    files = {f"{name}.pd": f"# {note}\n" + format_diagram(d)
             for name, (d, _, note) in entries.items()}
    files["manifest.json"] = manifest(entries)
    DATA.mkdir(parents=True, exist_ok=True)
    changed = []
    for name, text in files.items():
        path = DATA / name
        if not path.exists() or path.read_text() != text:
            changed.append(name)
            if not args.check:
                path.write_text(text)
    if args.check and changed:
        print("out of date:", ", ".join(changed), file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
