"""A guided tour of the three-component link ``paper_L``.

Run with ``python3 demos/walkthrough.py``.  Takes about half a minute, most
of it in the unlinking search.
"""

from __future__ import annotations

from linklab import catalog
from linklab.diagram import classify_crossing, crossing_change, sublink
from linklab.invariants import component_determinant, linking_numbers, seifert_matrix
from linklab.obstructions import splitness_report
from linklab.search import lower_bound_unlink, search_split, search_unlink, strategy_gap


def show(title, lines):
    print(f"\n== {title}")
    for line in lines:
        print("  " + line)


entry = catalog.load("paper_L")
L = entry.diagram
witnesses = catalog.paper_witnesses()

show("the link", [
    f"{L.crossing_count} crossings, components {', '.join(L.component_names)}",
    "determinants: " + ", ".join(f"{c} = {component_determinant(L, c)}"
                                 for c in L.component_names),
    "linking numbers: " + ", ".join(f"lk({a},{b}) = {v}"
                                    for (a, b), v in linking_numbers(L).items()),
])

# Every pairwise linking number vanishes, so linking numbers alone cannot
# show that L is not split.  Band sums can.
for w in witnesses:
    k = w.knot
    show(f"band sum {w.label} on {{{','.join(w.subset)}}}", [
        f"{k.crossing_count}-crossing knot, Seifert matrix {seifert_matrix(k).rows}x"
        f"{seifert_matrix(k).rows}",
        *splitness_report(sublink(L, w.subset), [w]).reasons[:2],
    ])

# One self-crossing change of L1 splits everything apart.
cid = entry.designated["clasp_L1"]
after = crossing_change(L, cid)
show(f"changing crossing {cid}", [
    f"tag {classify_crossing(L, cid)}",
    f"L2, L3 still have determinant {component_determinant(after, 'L2')} and "
    f"{component_determinant(after, 'L3')}",
])

split = search_split(L, witnesses=witnesses)
show("splitting search", [f"{split.length} change: " + ", ".join(
    f"crossing {c} {t}" for c, t in split.steps)])

# Each step names a crossing of the diagram reached so far, after the
# previous change and simplification, so ids after the first are not ids in L.
unlink = search_unlink(L)
bound, why = lower_bound_unlink(L, witnesses)
show("unlinking search", [
    f"{unlink.length} changes: " + ", ".join(f"crossing {c} {t}" for c, t in unlink.steps),
    f"lower bound {bound}",
    *why[:2],
])

gap = strategy_gap(L, witnesses=witnesses)
show("splitting first costs more", [
    f"u = {gap.u_upper}, sp = {gap.sp_upper}, split-first needs {gap.split_first_min}",
    *[r for r in gap.reasons if "excluded" in r or "persist" in r],
    "certified" if gap.gap_certified else "not certified",
])
