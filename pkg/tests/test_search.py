from __future__ import annotations

import random

import pytest

from conftest import HOPF, SPLIT2, TREFOIL, UNKNOT, code, inflate
from linklab import catalog
from linklab.diagram import (
    classify_crossing,
    crossing_change,
    from_passages,
    structurally_equal,
)
from linklab.invariants import component_determinant
from linklab.obstructions import splitness_report
from linklab.search import (
    Certainty,
    SearchBudget,
    certify_split,
    certify_unknot,
    diagram_hash,
    lower_bound_unlink,
    replay,
    search_split,
    search_unlink,
    simplify,
    strategy_gap,
)
from oracles import brute_change_count, is_layered_split, is_layered_unlink, knot_diagrams_up_to

KINK = from_passages([("K", code("O1", "U1"))], {1: 1})
TWO_TREFOILS = from_passages(
    [("A", code("O1", "U2", "O3", "U1", "O2", "U3")),
     ("B", code("O4", "U5", "O6", "U4", "O5", "U6"))],
    {i: 1 for i in range(1, 7)})


def fully_split(d):
    return len(d.pieces) == len(d.components)


# budget


def test_budget_defaults_and_validation():
    b = SearchBudget()
    assert (b.max_changes, b.max_moves_per_stage, b.max_crossings) == (3, 5000, None)
    assert b.resolved(TREFOIL).max_crossings == 7
    with pytest.raises(ValueError):
        SearchBudget(max_changes=-1)
    with pytest.raises(ValueError):
        SearchBudget(max_crossings=0)


# simplification


def test_simplify_kink():
    assert simplify(KINK).crossing_count == 0


def test_simplify_trefoil_keeps_three():
    assert simplify(TREFOIL).crossing_count >= 3


def test_simplify_respects_crossing_cap():
    d = inflate(UNKNOT, random.Random(1), 5)
    s = simplify(d, SearchBudget(max_crossings=d.crossing_count))
    assert s.crossing_count <= d.crossing_count


def test_simplify_L1_clasp(paper_L):
    d = crossing_change(paper_L.diagram, paper_L.designated["clasp_L1"])
    s = simplify(d, goal=fully_split)
    assert len(s.pieces) == 3


def test_simplify_inflated_unknots():
    rng = random.Random(9)
    for _ in range(10):
        d = inflate(UNKNOT, rng, 5, cap=6)
        assert simplify(d).crossing_count == 0


# certification


def test_small_knot_diagrams_are_unknots():
    ds = knot_diagrams_up_to(2)
    assert {d.crossing_count for d in ds} == {0, 1, 2}
    for d in ds:
        assert certify_unknot(d).status is Certainty.YES


def test_certify_unknot():
    assert certify_unknot(UNKNOT).status is Certainty.YES
    assert certify_unknot(TREFOIL).status is Certainty.NO
    d = inflate(UNKNOT, random.Random(4), 4, cap=6)
    assert d.crossing_count > 0
    assert certify_unknot(d, SearchBudget(max_moves_per_stage=1)).status is Certainty.UNKNOWN
    with pytest.raises(ValueError):
        certify_unknot(HOPF)


def test_certify_split(paper_L, witnesses):
    c = certify_split(SPLIT2)
    assert c.status is Certainty.YES and c.partition == (("A",), ("B",))
    assert certify_split(HOPF).status is Certainty.NO
    c = certify_split(paper_L.diagram, witnesses=witnesses)
    assert c.status is Certainty.NO
    assert any("13" in r for r in c.reasons)


# searches


def test_search_trivial_cases():
    assert search_unlink(SPLIT2).length == 0
    assert search_split(SPLIT2).length == 0
    assert search_unlink(UNKNOT).length == 0


def test_hopf_matches_brute_force():
    assert brute_change_count(HOPF, is_layered_unlink) == 1
    assert brute_change_count(HOPF, is_layered_split) == 1
    u = search_unlink(HOPF)
    s = search_split(HOPF)
    assert u.length == 1 and u.outcome == "Unlink"
    assert s.length == 1 and s.outcome == "Split"
    assert lower_bound_unlink(HOPF)[0] == 1


def test_search_respects_budget():
    assert search_unlink(TREFOIL, SearchBudget(max_changes=0)) is None


def test_sequences_replay(paper_L):
    d = paper_L.diagram
    seq = search_split(d)
    again = replay(d, [c for c, _ in seq.steps], goal="split")
    assert [diagram_hash(x) for x in again] == seq.to_json()["diagram_hashes"]
    assert fully_split(again[-1])
    assert seq.partition == (("L1",), ("L2",), ("L3",))


def test_split_sequence_uses_L1_clasp(paper_L, witnesses):
    seq = search_split(paper_L.diagram, witnesses=witnesses)
    assert seq.length == 1
    assert [str(t) for t in seq.tags] == ["(L1,L1)"]


def test_only_self_changes_of_L1_can_split(paper_L, witnesses):
    d = paper_L.diagram
    for c in d.crossings:
        tag = classify_crossing(d, c.id)
        if str(tag) == "(L1,L1)":
            continue
        assert splitness_report(crossing_change(d, c.id), witnesses).obstructed


def test_L1_changes_keep_trefoils(paper_L):
    d = paper_L.diagram
    for c in d.crossings:
        if str(classify_crossing(d, c.id)) == "(L1,L1)":
            e = crossing_change(d, c.id)
            assert component_determinant(e, "L2") == 3
            assert component_determinant(e, "L3") == 3


def test_lower_bounds(paper_L, witnesses):
    assert lower_bound_unlink(SPLIT2)[0] == 0
    assert lower_bound_unlink(TREFOIL)[0] == 1
    bound, reasons = lower_bound_unlink(paper_L.diagram, witnesses)
    assert bound == 2
    assert any("L2" in r and "determinant 3" in r for r in reasons)


def test_upper_at_least_lower_on_small_catalog():
    for name in ("unknot0", "unknot_kinked", "trefoil", "hopf_pos", "two_unknots_split"):
        d = catalog.load(name).diagram
        seq = search_unlink(d)
        assert seq is not None and seq.length >= lower_bound_unlink(d)[0]


def test_gap_small_cases():
    g = strategy_gap(HOPF)
    assert (g.u_upper, g.sp_upper) == (1, 1) and not g.gap_certified
    g = strategy_gap(TWO_TREFOILS)
    assert g.sp_upper == g.sp_lower == 0
    assert g.split_first_min == g.u_upper == 2
    assert not g.gap_certified


def test_search_is_seed_independent():
    d = inflate(HOPF, random.Random(8), 3)
    a = search_unlink(d, seed=1)
    b = search_unlink(d, seed=2)
    assert a.to_json() == b.to_json()
    assert all(structurally_equal(x, y) for x, y in zip(a.replay, b.replay))
