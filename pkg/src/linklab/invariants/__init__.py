"""Classical invariants: linking numbers, Seifert forms, determinants, Alexander polynomials."""

from __future__ import annotations

from ..diagram import DiagramError, PlanarDiagram, sublink
from .algebra import IntMatrix, LaurentPoly, bareiss_det
from .seifert import SeifertData, seifert_algorithm, seifert_matrix

__all__ = [
    "IntMatrix",
    "LaurentPoly",
    "SeifertData",
    "bareiss_det",
    "linking_number",
    "linking_numbers",
    "seifert_algorithm",
    "seifert_matrix",
    "determinant_from_seifert",
    "alexander_from_seifert",
    "component_determinant",
    "knot_determinant",
    "alexander_polynomial",
]


def linking_number(d: PlanarDiagram, a: str, b: str) -> int:
    """Half the signed count of crossings between components ``a`` and ``b``."""
    names = d.component_names
    for n in (a, b):
        if n not in names:
            raise KeyError(f"unknown component {n!r}")
    if a == b:
        raise ValueError("linking number needs two distinct components")
    total = 0
    for c in d.crossings:
        if {d.arc_component[c.u_in], d.arc_component[c.o_in]} == {a, b}:
            total += c.sign
    if total % 2:
        raise DiagramError("odd inter-component crossing sum")
    return total // 2


def linking_numbers(d: PlanarDiagram) -> dict[tuple[str, str], int]:
    """All pairwise linking numbers, keyed by sorted name pairs."""
    names = sorted(d.component_names)
    return {(x, y): linking_number(d, x, y)
            for i, x in enumerate(names) for y in names[i + 1:]}


def _square(V: IntMatrix) -> None:
    if not V.is_square:
        raise ValueError(f"expected a square matrix, got {V.rows}x{V.cols}")


def determinant_from_seifert(V: IntMatrix) -> int:
    """``|det(V + V^T)|``; the empty matrix gives 1."""
    _square(V)
    return abs((V + V.T).det())


def alexander_from_seifert(V: IntMatrix) -> LaurentPoly:
    """``det(V - t V^T)`` in normalized form."""
    _square(V)
    t = LaurentPoly.t()
    n = V.rows
    rows = [[LaurentPoly.constant(V[i, j]) - t * V[j, i] for j in range(n)] for i in range(n)]
    return bareiss_det(rows, one=LaurentPoly.constant(1), zero=LaurentPoly()).normalized()


def knot_determinant(d: PlanarDiagram) -> int:
    """Determinant of the link drawn by ``d``; 0 if the diagram is visibly split."""
    if len(d.pieces) > 1:
        return 0
    return determinant_from_seifert(seifert_matrix(seifert_algorithm(d)))


def alexander_polynomial(d: PlanarDiagram) -> LaurentPoly:
    if len(d.pieces) > 1:
        return LaurentPoly()
    return alexander_from_seifert(seifert_matrix(seifert_algorithm(d)))


def component_determinant(d: PlanarDiagram, c: str) -> int:
    """Determinant of component ``c`` viewed as a knot on its own."""
    return knot_determinant(sublink(d, [c]))
