from __future__ import annotations

import itertools
import math
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import HOPF, SPLIT2, TREFOIL, UNKNOT, inflate, random_knot
from linklab import catalog
from linklab.diagram import DiagramError, crossing_change, from_passages, sublink
from linklab.invariants import (
    IntMatrix,
    LaurentPoly,
    alexander_from_seifert,
    alexander_polynomial,
    bareiss_det,
    component_determinant,
    determinant_from_seifert,
    knot_determinant,
    linking_number,
    linking_numbers,
    seifert_algorithm,
    seifert_matrix,
)
from oracles import fox_alexander, goeritz_determinant, lk_over_only

V4 = IntMatrix.from_rows([[0, 0, 1, 0], [1, 1, 0, 0], [1, 0, -1, 0], [0, 0, 1, -1]])
W = IntMatrix.from_rows([[-1, 1], [0, -1]])
T = LaurentPoly.t()


def leibniz(rows):
    n = len(rows)
    total = 0
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        total += (-1) ** inv * math.prod(rows[i][perm[i]] for i in range(n))
    return total


# Laurent polynomials and matrices


def test_laurent_arithmetic():
    p = LaurentPoly.from_coeffs([1, -1, 1])
    assert str(p) == "t^2 - t + 1"
    assert p(-1) == 3
    assert (p * T).shift(-1) == p
    assert (p * p).exact_div(p) == p
    assert p.reciprocal().normalized() == p
    assert (T * p).equal_up_to_units(-p)


def test_exact_div_rejects_remainder():
    with pytest.raises(ArithmeticError):
        LaurentPoly.from_coeffs([1, 0, 1]).exact_div(LaurentPoly.from_coeffs([1, 1]))


@given(st.lists(st.lists(st.integers(-4, 4), min_size=4, max_size=4), min_size=4, max_size=4))
def test_bareiss_matches_leibniz(rows):
    assert bareiss_det(rows) == leibniz(rows)


def test_empty_matrix():
    empty = IntMatrix.from_rows([])
    assert determinant_from_seifert(empty) == 1
    assert alexander_from_seifert(empty) == LaurentPoly.constant(1)


def test_non_square_rejected():
    m = IntMatrix.from_rows([[1, 2, 3], [4, 5, 6]])
    with pytest.raises(ValueError):
        determinant_from_seifert(m)
    with pytest.raises(ValueError):
        alexander_from_seifert(m)


def test_four_by_four_matrix():
    assert determinant_from_seifert(V4) == 13
    delta = alexander_from_seifert(V4)
    assert abs(delta(-1)) == 13
    assert delta.equal_up_to_units(delta.reciprocal())


def test_trefoil_matrix():
    assert determinant_from_seifert(W) == 3
    assert alexander_from_seifert(W) == LaurentPoly.from_coeffs([1, -1, 1])


def test_delta_at_minus_one_on_random_matrices():
    rng = random.Random(7)
    for _ in range(50):
        n = rng.choice([1, 2, 3, 4])
        rows = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)]
        V = IntMatrix.from_rows(rows)
        sym = [[rows[i][j] + rows[j][i] for j in range(n)] for i in range(n)]
        assert determinant_from_seifert(V) == abs(leibniz(sym))
        assert abs(alexander_from_seifert(V)(-1)) == determinant_from_seifert(V)


# linking numbers


def test_linking_examples(paper_L):
    assert linking_number(SPLIT2, "A", "B") == 0
    assert linking_number(HOPF, "A", "B") == 1
    assert linking_number(HOPF, "B", "A") == 1
    assert set(linking_numbers(paper_L.diagram).values()) == {0}


def test_linking_errors():
    with pytest.raises(KeyError):
        linking_number(HOPF, "A", "Z")
    with pytest.raises(ValueError):
        linking_number(HOPF, "A", "A")


def test_linking_matches_over_only_count():
    for name in catalog.names():
        d = catalog.load(name).diagram
        for (a, b), v in linking_numbers(d).items():
            assert v == lk_over_only(d, a, b) == lk_over_only(d, b, a)


# Seifert surfaces


def test_seifert_examples():
    s = seifert_algorithm(UNKNOT)
    assert (s.seifert_circle_count, s.genus) == (1, 0)
    assert seifert_matrix(s).rows == 0
    s = seifert_algorithm(TREFOIL)
    assert (s.seifert_circle_count, s.genus) == (2, 1)
    assert determinant_from_seifert(seifert_matrix(s)) == 3
    kink = from_passages([("K", [(1, True), (1, False)])], {1: 1})
    s = seifert_algorithm(kink)
    assert (s.seifert_circle_count, s.genus) == (2, 0)


def test_seifert_rejects_disconnected():
    with pytest.raises(DiagramError):
        seifert_algorithm(SPLIT2)


def test_band_sum_matrix():
    for name in ("paper_bandsum_K12", "paper_bandsum_K13"):
        V = seifert_matrix(catalog.load(name).diagram)
        assert V.rows == 4
        assert determinant_from_seifert(V) == 13
        assert abs(alexander_from_seifert(V)(-1)) == 13


@given(st.integers(0, 100_000))
def test_seifert_genus_formula(seed):
    d = random_knot(seed)
    s = seifert_algorithm(d)
    assert 2 * s.genus == s.crossing_count - s.seifert_circle_count + 1
    assert seifert_matrix(s).rows == 2 * s.genus


# knot invariants against independent oracles


@given(st.integers(0, 100_000))
def test_alexander_matches_fox_and_goeritz(seed):
    d = random_knot(seed)
    delta = alexander_polynomial(d)
    assert delta == fox_alexander(d)
    assert abs(delta(-1)) == knot_determinant(d) == goeritz_determinant(d)
    assert delta.equal_up_to_units(delta.reciprocal())


def test_catalog_knots_match_oracles():
    for name in ("trefoil", "figure8", "paper_bandsum_K12", "paper_bandsum_K13", "unknot_kinked"):
        d = catalog.load(name).diagram
        assert alexander_polynomial(d) == fox_alexander(d)
        assert knot_determinant(d) == goeritz_determinant(d)


def test_link_determinants_match_goeritz(paper_L):
    for d in (HOPF, paper_L.diagram, sublink(paper_L.diagram, ["L1", "L2"])):
        assert knot_determinant(d) == goeritz_determinant(d)


def test_component_determinants(paper_L):
    d = paper_L.diagram
    assert [component_determinant(d, c) for c in ("L1", "L2", "L3")] == [1, 3, 3]
    assert component_determinant(catalog.load("paper_bandsum_K12").diagram, "K") == 13
    with pytest.raises(KeyError):
        component_determinant(d, "L9")


def test_component_determinant_ignores_other_components(paper_L):
    d = paper_L.diagram
    for c in d.crossings:
        e = crossing_change(d, c.id)
        under, over = d.strand_components(c.id)
        for name in d.component_names:
            if name not in (under, over) or under != over:
                assert component_determinant(e, name) == component_determinant(d, name)


def test_determinant_stable_under_inflation():
    rng = random.Random(5)
    for _ in range(10):
        d = inflate(TREFOIL, rng, 6)
        assert knot_determinant(d) == 3
        assert alexander_polynomial(d) == LaurentPoly.from_coeffs([1, -1, 1])
