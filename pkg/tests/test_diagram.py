from __future__ import annotations

import re

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import HOPF, SPLIT2, TREFOIL, random_knot
from linklab import catalog
from linklab.diagram import (
    ComponentPairTag,
    DiagramError,
    ParseError,
    canonical_form,
    classify_crossing,
    crossing_change,
    format_diagram,
    is_visibly_split,
    parse_diagram,
    rename_components,
    structurally_equal,
    sublink,
)
from linklab.invariants import linking_number, linking_numbers

HOPF_TEXT = """\
# positive Hopf link
X 1 u_in=3 o_in=1 u_out=4 o_out=2 sign=+
X 2 u_in=2 o_in=4 u_out=1 o_out=3 sign=+
C A: 1 2
C B: 3 4
"""


def all_catalog():
    return [catalog.load(n) for n in catalog.names()]


# parsing


def test_parse_hopf():
    d = parse_diagram(HOPF_TEXT)
    assert d.arc_count == 4
    assert d.crossing_count == 2
    assert d.component_names == ("A", "B")


def test_parse_zero_crossing_unknot():
    d = parse_diagram("C K: 1\n")
    assert d.crossing_count == 0
    assert len(d.components) == 1


def test_parse_arc_used_three_times():
    text = HOPF_TEXT.replace("u_out=1 o_out=3", "u_out=3 o_out=3")
    with pytest.raises(DiagramError):
        parse_diagram(text)


def test_parse_error_has_line_number():
    with pytest.raises(ParseError) as e:
        parse_diagram("C K: 1\nX 1 garbage\n")
    assert e.value.line == 2
    assert "line 2" in str(e.value)


def test_parse_inconsistent_cycle():
    text = HOPF_TEXT.replace("C A: 1 2", "C A: 1 3").replace("C B: 3 4", "C B: 2 4")
    with pytest.raises(DiagramError):
        parse_diagram(text)


def test_format_round_trip():
    for e in all_catalog():
        assert structurally_equal(parse_diagram(format_diagram(e.diagram)), e.diagram)


# crossing changes


def test_change_is_involution_on_catalog():
    for e in all_catalog():
        d = e.diagram
        for c in d.crossings:
            twice = crossing_change(crossing_change(d, c.id), c.id)
            assert twice == d
            assert structurally_equal(twice, d)


def test_change_flips_only_one_crossing():
    d = catalog.load("paper_L").diagram
    for c in d.crossings[:6]:
        e = crossing_change(d, c.id)
        assert e.crossing(c.id).sign == -c.sign
        assert e.arc_count == d.arc_count
        assert [x.arcs for x in e.components] == [x.arcs for x in d.components]
        for other in d.crossings:
            assert classify_crossing(e, other.id) == classify_crossing(d, other.id)
            if other.id != c.id:
                assert e.crossing(other.id) == other


def test_change_hopf_drops_linking():
    assert linking_number(HOPF, "A", "B") == 1
    assert linking_number(crossing_change(HOPF, 1), "A", "B") == 0


def test_change_unknown_crossing():
    with pytest.raises(KeyError):
        crossing_change(HOPF, 99)


def test_inter_component_change_moves_lk_by_one():
    for e in all_catalog():
        d = e.diagram
        base = linking_numbers(d)
        for c in d.crossings:
            tag = classify_crossing(d, c.id)
            after = linking_numbers(crossing_change(d, c.id))
            diff = {k: after[k] - base[k] for k in base}
            if tag.is_self:
                assert all(v == 0 for v in diff.values())
            else:
                key = (tag.first, tag.second)
                assert abs(diff[key]) == 1
                assert all(v == 0 for k, v in diff.items() if k != key)


# classification


def test_classify():
    assert all(classify_crossing(TREFOIL, c.id) == ComponentPairTag.of("K", "K")
               for c in TREFOIL.crossings)
    tag = classify_crossing(HOPF, 1)
    assert not tag.is_self and {tag.first, tag.second} == {"A", "B"}
    assert str(tag) == "(A,B)"


def test_classify_L_clasps(paper_L):
    cid = paper_L.designated["clasp_L1"]
    assert str(classify_crossing(paper_L.diagram, cid)) == "(L1,L1)"


# sublinks


def test_sublink_identity():
    assert structurally_equal(sublink(HOPF, ["A", "B"]), HOPF)


def test_sublink_hopf_one_component():
    s = sublink(HOPF, ["A"])
    assert s.crossing_count == 0 and s.component_names == ("A",)


def test_sublink_errors():
    with pytest.raises(DiagramError):
        sublink(HOPF, [])
    with pytest.raises(KeyError):
        sublink(HOPF, ["Z"])


def test_sublink_nested(paper_L):
    d = paper_L.diagram
    a = sublink(d, ["L1", "L2"])
    assert structurally_equal(sublink(a, ["L2"]), sublink(d, ["L2"]))
    assert structurally_equal(sublink(a, ["L1"]), sublink(d, ["L1"]))


def test_L_sublinks_match_after_relabel(paper_L):
    d = paper_L.diagram
    a = sublink(d, ["L1", "L2"])
    b = rename_components(sublink(d, ["L1", "L3"]), {"L2": "L3", "L3": "L2"})
    assert structurally_equal(a, b)


# visible splitting


def test_visibly_split():
    assert len(is_visibly_split(SPLIT2)) == 2
    assert len(is_visibly_split(HOPF)) == 1


def test_pieces_are_unions_of_components():
    for e in all_catalog():
        d = e.diagram
        pieces = is_visibly_split(d)
        assert len(pieces) <= len(d.components)
        assert sorted(n for p in pieces for n in p) == sorted(d.component_names)


# canonical form


@given(st.integers(0, 10_000))
def test_canonical_form_is_stable(seed):
    d = random_knot(seed)
    c = canonical_form(d)
    assert canonical_form(c) == c
    assert structurally_equal(c, d)


def test_canonical_form_ignores_labels():
    perm = {"1": "3", "2": "4", "3": "1", "4": "2"}
    text = re.sub(r"(?<=[=: ])([1-4])(?=[ \n])", lambda m: perm[m.group(1)], HOPF_TEXT)
    text = text.replace("C A:", "C Z:").replace("C B:", "C A:").replace("C Z:", "C B:")
    relabelled = parse_diagram(text)
    assert relabelled.component("A").arcs == (1, 2)
    assert structurally_equal(relabelled, HOPF)
    assert not structurally_equal(crossing_change(HOPF, 1), HOPF)
