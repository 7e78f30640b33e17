from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import HOPF, SPLIT2, TREFOIL, random_knot
from linklab.diagram import from_passages, sublink
from linklab.obstructions import (
    Status,
    Witness,
    band_sum_split_obstruction,
    fox_milnor_det_check,
    square_class_equal,
    squarefree_part,
    splitness_report,
)


def brute_square_class(a: int, b: int, bound: int) -> bool:
    """Search 1 <= n, l <= bound for a n^2 = +-b l^2."""
    squares = {n * n: n for n in range(1, bound + 1)}
    for n in range(1, bound + 1):
        lhs = abs(a) * n * n
        if lhs % abs(b) == 0 and lhs // abs(b) in squares:
            return True
    return False


def test_squarefree_examples():
    assert squarefree_part(1) == 1
    assert squarefree_part(13) == 13
    assert squarefree_part(12) == 3
    assert squarefree_part(-12) == 3
    with pytest.raises(ValueError):
        squarefree_part(0)


def test_squarefree_ignores_square_factors():
    for n in range(1, 101):
        for m in range(1, 11):
            assert squarefree_part(n * m * m) == squarefree_part(n)


def test_square_class_examples():
    assert square_class_equal(7, 7)
    assert not square_class_equal(13, 3)
    assert square_class_equal(8, 2)
    with pytest.raises(ValueError):
        square_class_equal(0, 3)


def test_thirteen_three_brute_force():
    assert not brute_square_class(13, 3, 1000)


def test_square_class_is_equivalence():
    vals = [v for v in range(-60, 61) if v]
    for a in vals:
        assert square_class_equal(a, a)
        for b in vals:
            assert square_class_equal(a, b) == square_class_equal(b, a)
    for a in vals[::7]:
        for b in vals[::5]:
            for c in vals[::3]:
                if square_class_equal(a, b) and square_class_equal(b, c):
                    assert square_class_equal(a, c)


def test_square_class_matches_brute_force():
    for a in range(-50, 51):
        for b in range(-50, 51):
            if a and b:
                assert square_class_equal(a, b) == brute_square_class(a, b, 1000)


def test_fox_milnor():
    assert fox_milnor_det_check(1, 1)
    assert not fox_milnor_det_check(13, 3)
    assert fox_milnor_det_check(45, 5)
    with pytest.raises(ValueError):
        fox_milnor_det_check(0, 3)


def test_band_sum_obstruction():
    v = band_sum_split_obstruction(13, [1, 3])
    assert v.status is Status.OBSTRUCTED
    assert any("13" in r and "3" in r for r in v.reasons)
    assert any(r.startswith("axiom:") for r in v.reasons)
    assert band_sum_split_obstruction(3, [1, 3]).status is Status.INCONCLUSIVE
    assert band_sum_split_obstruction(5, [1, 1]).status is Status.OBSTRUCTED
    with pytest.raises(ValueError):
        band_sum_split_obstruction(5, [])


def test_report_on_hopf():
    v = splitness_report(HOPF)
    assert v.obstructed
    assert "lk(A,B) = 1" in v.reasons[0]


def test_report_on_split_unknots():
    v = splitness_report(SPLIT2)
    assert v.status is Status.INCONCLUSIVE
    assert v.reasons


def test_report_on_L_sublinks(paper_L, witnesses):
    d = paper_L.diagram
    for w in witnesses:
        v = splitness_report(sublink(d, w.subset), [w])
        assert v.obstructed
        assert any("squarefree(13) = 13" in r and "squarefree(3) = 3" in r for r in v.reasons)
    assert splitness_report(d, witnesses).obstructed


def test_report_accepts_pairs(paper_L, witnesses):
    w = witnesses[0]
    v = splitness_report(paper_L.diagram, [(w.subset, w.knot)])
    assert v.obstructed


def test_witness_skipped_when_sublink_differs(paper_L, witnesses):
    from linklab.diagram import crossing_change

    d = paper_L.diagram
    cid = paper_L.designated["clasp_L1"]
    v = splitness_report(crossing_change(d, cid), witnesses)
    assert not v.obstructed
    assert any("skipped" in r for r in v.reasons)


def test_witness_validation(witnesses):
    knot = witnesses[0].knot
    with pytest.raises(ValueError):
        splitness_report(HOPF, [Witness(("A",), knot)])
    with pytest.raises(ValueError):
        splitness_report(HOPF, [Witness(("A", "B"), SPLIT2)])
    with pytest.raises(KeyError):
        splitness_report(HOPF, [Witness(("A", "Z"), TREFOIL)])


@given(st.integers(0, 10_000), st.integers(0, 10_000))
def test_never_obstructs_visibly_split_without_witnesses(s1, s2):
    a, b = random_knot(s1, steps=5), random_knot(s2, steps=5)
    off = max(c.id for c in a.crossings)
    comps = [("A", list(a.passages[0][1])),
             ("B", [(cid + off, over) for cid, over in b.passages[0][1]])]
    signs = dict(a.signs) | {cid + off: v for cid, v in b.signs.items()}
    d = from_passages(comps, signs, validate=True)
    assert len(d.pieces) == 2
    assert splitness_report(d).status is not Status.OBSTRUCTED
