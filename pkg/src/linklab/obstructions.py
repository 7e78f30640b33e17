"""Obstructions to splitting a link.

Two rules are implemented.  A nonzero linking number rules out splitting
directly.  The other rule uses a knot ``K`` obtained by band-summing the
components of a 2-component sublink ``J1 u J2``: if the sublink were split,
``K`` would be concordant to ``J1 # J2``.  Concordant knots have Alexander
polynomials that agree up to norms ``f(t) f(1/t)``, so evaluating at ``t = -1``
their determinants lie in the same square class.  The concordance fact is used
as a cited axiom and is named in every reason that depends on it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

from .diagram import PlanarDiagram, structurally_equal, sublink
from .invariants import component_determinant, knot_determinant, linking_numbers

__all__ = [
    "Status",
    "ObstructionVerdict",
    "Witness",
    "squarefree_part",
    "square_class_equal",
    "fox_milnor_det_check",
    "band_sum_split_obstruction",
    "splitness_report",
]

CONCORDANCE_AXIOM = (
    "axiom: a band sum of a split link J1 u J2 is concordant to J1 # J2, and "
    "concordant knots have determinants in the same square class"
)


class Status(str, Enum):
    OBSTRUCTED = "Obstructed"
    CONSISTENT = "Consistent"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class ObstructionVerdict:
    status: Status
    reasons: tuple[str, ...] = ()

    @property
    def obstructed(self) -> bool:
        return self.status is Status.OBSTRUCTED

    def to_json(self) -> dict:
        return {"status": self.status.value, "reasons": list(self.reasons)}


@dataclass(frozen=True)
class Witness:
    """A knot obtained by band-summing the components ``subset`` of a link.

    ``source`` is the sublink diagram the band sum was made from.  When it is
    set, the witness is only used on links whose sublink on ``subset`` has the
    same canonical form, so it can be carried over to other diagrams safely.
    """

    subset: tuple[str, ...]
    knot: PlanarDiagram
    source: PlanarDiagram | None = None
    label: str = ""


def squarefree_part(n: int) -> int:
    """Product of the primes dividing ``|n|`` to an odd power."""
    if n == 0:
        raise ValueError("squarefree part of zero is undefined")
    n = abs(n)
    out = 1
    p = 2
    while p * p <= n:
        k = 0
        while n % p == 0:
            n //= p
            k += 1
        if k % 2:
            out *= p
        p += 1 if p == 2 else 2
    return out * n


def square_class_equal(a: int, b: int) -> bool:
    """Whether ``a n^2 = +-b l^2`` has a solution in nonzero integers."""
    if a == 0 or b == 0:
        raise ValueError("square classes are defined for nonzero integers")
    return squarefree_part(a) == squarefree_part(b)


def fox_milnor_det_check(det_K: int, det_J: int) -> bool:
    """Necessary condition at ``t = -1`` for two knots to be concordant."""
    if det_K <= 0 or det_J <= 0:
        raise ValueError("knot determinants are positive")
    return square_class_equal(det_K, det_J)


def band_sum_split_obstruction(det_K: int, det_components: Sequence[int]) -> ObstructionVerdict:
    """Verdict for a link whose components have ``det_components`` and
    which band-sums to a knot of determinant ``det_K``."""
    if not det_components:
        raise ValueError("need at least one component determinant")
    prod = math.prod(det_components)
    parts = " * ".join(str(x) for x in det_components)
    if fox_milnor_det_check(det_K, prod):
        return ObstructionVerdict(Status.INCONCLUSIVE, (
            f"det(K) = {det_K} and {parts} = {prod} share a square class "
            f"(squarefree part {squarefree_part(prod)}); no information",
        ))
    return ObstructionVerdict(Status.OBSTRUCTED, (
        f"square classes differ: squarefree({det_K}) = {squarefree_part(det_K)}, "
        f"squarefree({prod}) = {squarefree_part(prod)}, so {det_K} n^2 = +-{prod} l^2 "
        f"has no nonzero solution",
        CONCORDANCE_AXIOM,
        f"det of a connected sum is the product: det(J1 # J2) = {parts} = {prod}",
    ))


def _as_witness(w) -> Witness:
    if isinstance(w, Witness):
        return w
    subset, knot = w
    return Witness(tuple(subset), knot)


def splitness_report(d: PlanarDiagram, band_sum_witnesses: Iterable = ()) -> ObstructionVerdict:
    """Run the splitting obstructions on ``d``.

    Witnesses are :class:`Witness` values or ``(subset, knot)`` pairs.
    """
    witnesses = [_as_witness(w) for w in band_sum_witnesses]
    for w in witnesses:
        if len(set(w.subset)) != 2:
            raise ValueError(f"witness subset must name 2 components, got {list(w.subset)}")
        for name in w.subset:
            d.component(name)
        if len(w.knot.components) != 1 or len(w.knot.pieces) != 1:
            raise ValueError("witness must be a connected knot diagram")

    reasons: list[str] = []
    obstructed = False
    for (a, b), lk in linking_numbers(d).items():
        if lk:
            obstructed = True
            reasons.append(f"lk({a},{b}) = {lk} != 0; links with nonzero linking "
                           f"number are not split")
    for w in witnesses:
        name = w.label or "K"
        pair = "{" + ",".join(w.subset) + "}"
        sub = sublink(d, w.subset)
        if w.source is not None and not structurally_equal(sub, w.source):
            reasons.append(f"witness {name} skipped: sublink {pair} differs from its source")
            continue
        det_k = knot_determinant(w.knot)
        dets = [component_determinant(d, n) for n in w.subset]
        v = band_sum_split_obstruction(det_k, dets)
        if v.obstructed:
            obstructed = True
            reasons.append(f"sublink {pair} is not split: band sum {name} has det {det_k}, "
                           f"components have dets {dets}")
            reasons.extend(v.reasons)
            reasons.append("a sublink of a split link is split, so the link is not split")
        else:
            reasons.append(f"witness {name} on {pair}: " + v.reasons[0])
    if obstructed:
        return ObstructionVerdict(Status.OBSTRUCTED, tuple(reasons))
    reasons.append("no obstruction applies; splitting is not ruled out")
    return ObstructionVerdict(Status.INCONCLUSIVE, tuple(reasons))
