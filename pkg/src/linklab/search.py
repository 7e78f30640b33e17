"""Bounded search over crossing changes and Reidemeister simplification.

Upper bounds come from explicit crossing-change sequences that end in a
diagram certified (by simplification) to be split or the unlink.  Lower
bounds come from invariants: knotted components need a self-change each,
linking numbers need inter-component changes, and obstructed sublinks need
at least one change before anything splits.

Only the number of crossing changes is counted; Reidemeister moves are free.
Every choice made by the search is broken by canonical order, so results do
not depend on the order in which candidates are visited.
"""

from __future__ import annotations

import hashlib
import heapq
import random
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterable, Sequence

from .diagram import (
    ComponentPairTag,
    PlanarDiagram,
    canonical_form,
    canonical_key,
    canonical_pair,
    classify_crossing,
    crossing_change,
    format_diagram,
)
from .invariants import component_determinant, linking_numbers
from .moves import apply_move, reidemeister_moves
from .obstructions import splitness_report

__all__ = [
    "SearchBudget",
    "Certainty",
    "Certificate",
    "ChangeSequence",
    "GapReport",
    "simplify",
    "certify_unknot",
    "certify_split",
    "search_unlink",
    "search_split",
    "lower_bound_unlink",
    "lower_bound_split",
    "strategy_gap",
    "replay",
]


@dataclass(frozen=True)
class SearchBudget:
    """Limits for one search.

    ``max_crossings=None`` means four more than the diagram the search
    starts from.
    """

    max_changes: int = 3
    max_moves_per_stage: int = 5000
    max_crossings: int | None = None

    def __post_init__(self):
        if self.max_changes < 0 or self.max_moves_per_stage < 0:
            raise ValueError("budget limits must be nonnegative")
        if self.max_crossings is not None and self.max_crossings <= 0:
            raise ValueError("max_crossings must be positive")

    def resolved(self, start: PlanarDiagram) -> "SearchBudget":
        if self.max_crossings is not None:
            return self
        return SearchBudget(self.max_changes, self.max_moves_per_stage,
                            start.crossing_count + 4)

    def to_json(self) -> dict:
        return {"max_changes": self.max_changes,
                "max_moves_per_stage": self.max_moves_per_stage,
                "max_crossings": self.max_crossings}


class Certainty(str, Enum):
    YES = "Yes"
    NO = "No"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class Certificate:
    status: Certainty
    partition: tuple[tuple[str, ...], ...] = ()
    reasons: tuple[str, ...] = ()

    def to_json(self) -> dict:
        out = {"status": self.status.value, "reasons": list(self.reasons)}
        if self.partition:
            out["partition"] = [list(p) for p in self.partition]
        return out


def diagram_hash(d: PlanarDiagram) -> str:
    text = format_diagram(canonical_form(d))
    return hashlib.sha256(text.encode()).hexdigest()[:16]


# ---------------------------------------------------------------------------
# simplification


def _fully_split(d: PlanarDiagram) -> bool:
    return len(d.pieces) == len(d.components)


def _no_crossings(d: PlanarDiagram) -> bool:
    return d.crossing_count == 0


def simplify(d: PlanarDiagram, budget: SearchBudget | None = None,
             goal: Callable[[PlanarDiagram], bool] | None = None,
             allow_increase: bool = True, patience: int | None = None) -> PlanarDiagram:
    """Fewest-crossing diagram reachable within the budget.

    States are explored best first by (crossings, canonical key).  Moves
    that do not add crossings are exhausted before any R1+/R2+ move is
    tried; with ``allow_increase=False`` the second phase is skipped.  The
    search stops early at 0 crossings or when ``goal`` holds, and also after
    ``patience`` generated states in a row fail to lower the best crossing
    count.  The result is in canonical form.
    """
    budget = (budget or SearchBudget()).resolved(d)
    cap = budget.max_crossings
    start, key0 = canonical_pair(d)
    if goal is None:
        goal = _no_crossings
    seen = {key0: start}
    best = (start.crossing_count, key0)
    if goal(start) or start.crossing_count == 0:
        return start

    heap = [(start.crossing_count, key0)]
    stale = 0
    expanded_flat: set = set()
    for phase in (0, 1) if allow_increase else (0,):
        if phase == 1:
            heap = sorted((d.crossing_count, k) for k, d in seen.items())
            heapq.heapify(heap)
        # the monotone phase leaves half the budget for the second one
        limit = budget.max_moves_per_stage
        if phase == 0 and allow_increase:
            limit //= 2
        expanded = set()
        while heap and len(seen) < limit:
            _, k = heapq.heappop(heap)
            if k in expanded:
                continue
            expanded.add(k)
            cur = seen[k]
            adds = phase == 1
            for m in reidemeister_moves(cur, adds=adds):
                if phase == 1 and m.crossing_delta <= 0 and k in expanded_flat:
                    continue
                if cur.crossing_count + m.crossing_delta > cap:
                    continue
                nxt = apply_move(cur, m)
                nk = canonical_key(nxt)
                if nk in seen:
                    continue
                seen[nk] = nxt
                cand = (nxt.crossing_count, nk)
                if cand[0] < best[0]:
                    stale = 0
                else:
                    stale += 1
                if cand < best:
                    best = cand
                if goal(nxt) or nxt.crossing_count == 0:
                    return canonical_form(nxt)
                heapq.heappush(heap, cand)
                if len(seen) >= limit:
                    break
                if patience is not None and stale >= patience:
                    return canonical_form(seen[best[1]])
        expanded_flat = expanded
    return canonical_form(seen[best[1]])


# ---------------------------------------------------------------------------
# certification


def certify_unknot(d: PlanarDiagram, budget: SearchBudget | None = None) -> Certificate:
    if len(d.components) != 1:
        raise ValueError("certify_unknot needs a knot diagram")
    det = component_determinant(d, d.components[0].name)
    if det != 1:
        return Certificate(Certainty.NO, reasons=(f"determinant {det} != 1",))
    s = simplify(d, budget)
    if s.crossing_count == 0:
        return Certificate(Certainty.YES, reasons=("simplified to 0 crossings",))
    return Certificate(Certainty.UNKNOWN, reasons=(
        f"determinant 1 but only simplified to {s.crossing_count} crossings",))


def _partition(d: PlanarDiagram):
    return tuple(tuple(sorted(p)) for p in d.pieces)


def certify_split(d: PlanarDiagram, budget: SearchBudget | None = None,
                  witnesses: Iterable = ()) -> Certificate:
    if _fully_split(d):
        return Certificate(Certainty.YES, _partition(d), ("diagram is visibly split",))
    verdict = splitness_report(d, witnesses)
    if verdict.obstructed:
        return Certificate(Certainty.NO, reasons=verdict.reasons)
    s = simplify(d, budget, goal=_fully_split)
    if _fully_split(s):
        return Certificate(Certainty.YES, _partition(s), (
            f"simplified to a visibly split diagram with {s.crossing_count} crossings",))
    return Certificate(Certainty.UNKNOWN, reasons=(
        "no obstruction applies and simplification did not separate the components",))


# ---------------------------------------------------------------------------
# change sequences


@dataclass(frozen=True)
class ChangeSequence:
    """Crossing changes, each followed by simplification.

    ``steps[i]`` names a crossing of the diagram current before step ``i``
    (the start diagram, then ``replay[i-1]``).  ``outcome`` is ``"Unlink"``,
    ``"Split"`` or ``None``.
    """

    steps: tuple[tuple[int, ComponentPairTag], ...]
    outcome: str | None
    replay: tuple[PlanarDiagram, ...]
    partition: tuple[tuple[str, ...], ...] = ()

    @property
    def length(self) -> int:
        return len(self.steps)

    @property
    def tags(self) -> tuple[ComponentPairTag, ...]:
        return tuple(t for _, t in self.steps)

    def to_json(self) -> dict:
        out = {
            "length": self.length,
            "steps": [{"crossing": c, "tag": str(t)} for c, t in self.steps],
            "outcome": self.outcome,
            "diagram_hashes": [diagram_hash(d) for d in self.replay],
        }
        if self.partition:
            out["partition"] = [list(p) for p in self.partition]
        return out


STAGE_PATIENCE = 400


def _stage(d: PlanarDiagram, budget: SearchBudget, goal, final: bool) -> PlanarDiagram:
    # intermediate stages only need a smaller diagram, not the smallest one
    if final:
        return simplify(d, budget, goal=goal)
    return simplify(d, budget, goal=goal, allow_increase=False, patience=STAGE_PATIENCE)


def replay(start: PlanarDiagram, steps: Sequence[int], budget: SearchBudget | None = None,
           goal: str = "unlink") -> list[PlanarDiagram]:
    """Diagrams after each step of a sequence, as recorded by the searches."""
    budget = (budget or SearchBudget()).resolved(start)
    test = _no_crossings if goal == "unlink" else _fully_split
    out = []
    cur = start
    for i, cid in enumerate(steps):
        cur = _stage(crossing_change(cur, cid), budget, test, i == len(steps) - 1)
        out.append(cur)
    return out


def _unlink_lower(d: PlanarDiagram) -> int:
    """Admissible bound: knotted components need a self-change each and
    every unit of linking needs an inter-component change."""
    knotted = sum(1 for n in d.component_names if component_determinant(d, n) != 1)
    return knotted + sum(abs(v) for v in linking_numbers(d).values())


def _split_lower(d: PlanarDiagram, witnesses) -> int:
    lk = sum(abs(v) for v in linking_numbers(d).values())
    if lk:
        return lk
    if witnesses and splitness_report(d, witnesses).obstructed:
        return 1
    return 0


def _bfs(start: PlanarDiagram, budget: SearchBudget, goal: str, witnesses=(),
         seed: int | None = None) -> ChangeSequence | None:
    budget = budget.resolved(start)
    test = _no_crossings if goal == "unlink" else _fully_split
    outcome = "Unlink" if goal == "unlink" else "Split"

    def lower(d):
        return _unlink_lower(d) if goal == "unlink" else _split_lower(d, witnesses)

    def finish(path, diagrams, final):
        part = _partition(final) if outcome == "Split" else ()
        return ChangeSequence(tuple(path), outcome, tuple(diagrams), part)

    if lower(start) == 0:
        s = _stage(start, budget, test, True)
        if test(s):
            return finish([], [], s)
    rng = random.Random(seed) if seed is not None else None
    # level: list of (path of crossing ids, tags, diagrams, current diagram)
    level = [((), (), (), start)]
    seen = {canonical_key(canonical_form(start))}
    for depth in range(1, budget.max_changes + 1):
        remaining = budget.max_changes - depth
        order = list(level)
        if rng is not None:
            rng.shuffle(order)
        children = []
        for ids, tags, diagrams, cur in order:
            cands = [c.id for c in cur.crossings]
            if rng is not None:
                rng.shuffle(cands)
            for cid in cands:
                child = crossing_change(cur, cid)
                children.append((ids + (cid,), tags + (classify_crossing(cur, cid),),
                                 diagrams, child, lower(child)))
        # candidates are tried in canonical order, so the first success is
        # the same whatever order they were generated in
        children.sort(key=lambda c: c[0])
        for step_ids, step_tags, diagrams, child, lb in children:
            if lb == 0:
                s = _stage(child, budget, test, True)
                if test(s):
                    return finish(list(zip(step_ids, step_tags)), diagrams + (s,), s)
        if remaining == 0:
            break
        nxt = {}
        for step_ids, step_tags, diagrams, child, lb in children:
            if lb > remaining:
                continue
            s = _stage(child, budget, test, False)
            if s.crossing_count > budget.max_crossings:
                continue
            k = canonical_key(s)
            if k in seen or k in nxt:
                continue
            nxt[k] = (step_ids, step_tags, diagrams + (s,), s)
        seen.update(nxt)
        level = list(nxt.values())
        if not level:
            break
    return None


def search_unlink(d: PlanarDiagram, budget: SearchBudget | None = None,
                  seed: int | None = None) -> ChangeSequence | None:
    """Shortest in-budget sequence ending in a 0-crossing diagram."""
    return _bfs(d, budget or SearchBudget(), "unlink", seed=seed)


def search_split(d: PlanarDiagram, budget: SearchBudget | None = None,
                 witnesses: Iterable = (), seed: int | None = None) -> ChangeSequence | None:
    """Shortest in-budget sequence ending in a fully visibly split diagram.

    Witnesses only prune candidates that cannot split; they never decide
    success.
    """
    return _bfs(d, budget or SearchBudget(), "split", tuple(witnesses), seed=seed)


# ---------------------------------------------------------------------------
# lower bounds and the strategy comparison


def lower_bound_unlink(d: PlanarDiagram, witnesses: Iterable = (),
                       budget: SearchBudget | None = None) -> tuple[int, list[str]]:
    """Lower bound on the unlinking number, with the rules that produced it."""
    witnesses = tuple(witnesses)
    reasons = []
    knotted = []
    for name in d.component_names:
        det = component_determinant(d, name)
        if det != 1:
            knotted.append(name)
            reasons.append(f"component {name} has determinant {det}, so it is knotted; "
                           f"only ({name},{name}) changes alter its knot type")
    a = len(knotted)
    b = 0
    if len(d.components) > 1:
        cert = certify_split(d, budget, witnesses)
        if cert.status is Certainty.NO:
            b = 1
            reasons.append("the link is not split, so it is not the unlink")
    reasons.append(f"rule (a) knotted components: {a}; rule (b) not split: {b}")
    return max(a, b), reasons


def lower_bound_split(d: PlanarDiagram, witnesses: Iterable = ()) -> tuple[int, list[str]]:
    witnesses = tuple(witnesses)
    reasons = []
    lk = linking_numbers(d)
    total = sum(abs(v) for v in lk.values())
    if total:
        reasons.append(f"sum of |lk| is {total}; each change moves one linking number by 1")
    obstructed = 0
    if len(d.components) > 1:
        v = splitness_report(d, witnesses)
        if v.obstructed:
            obstructed = 1
            reasons.extend(v.reasons)
    return max(total, obstructed), reasons


@dataclass(frozen=True)
class GapReport:
    u_upper: int | None
    u_lower: int
    sp_upper: int | None
    sp_lower: int
    split_first_min: int | None
    split_first_upper: int | None
    gap_certified: bool
    reasons: tuple[str, ...]
    unlink_sequence: ChangeSequence | None = None
    split_sequence: ChangeSequence | None = None

    def to_json(self) -> dict:
        return {
            "u_upper": self.u_upper,
            "u_lower": self.u_lower,
            "sp_upper": self.sp_upper,
            "sp_lower": self.sp_lower,
            "split_first_min": self.split_first_min,
            "split_first_upper": self.split_first_upper,
            "gap_certified": self.gap_certified,
            "unlink_sequence": self.unlink_sequence.to_json() if self.unlink_sequence else None,
            "split_sequence": self.split_sequence.to_json() if self.split_sequence else None,
            "reasons": list(self.reasons),
        }


def _split_first(d, budget, witnesses, s, reasons):
    """Lower bound for strategies that split first, using ``s`` changes.

    Enumerates every length-``s`` sequence; sequences whose result is
    provably not split are excluded, the others must still unknot every
    knotted component.
    """
    level = [((), d)]
    for _ in range(s):
        nxt = []
        for ids, cur in level:
            for c in cur.crossings:
                nxt.append((ids + (c.id,), crossing_change(cur, c.id)))
        level = nxt
    best = None
    by_tag: dict[str, dict] = {}
    for ids, cur in level:
        tag = str(classify_crossing(d, ids[0])) if ids else "()"
        entry = by_tag.setdefault(tag, {"ids": [], "excluded": None, "knotted": None})
        entry["ids"].append(ids[-1] if ids else None)
        why = None
        lk = {k: v for k, v in linking_numbers(cur).items() if v}
        if lk:
            (a, b), v = next(iter(lk.items()))
            why = f"lk flip: lk({a},{b}) becomes {v}, so the result is not split"
        elif witnesses and len(cur.components) > 1:
            rep = splitness_report(cur, witnesses)
            if rep.obstructed:
                fired = [r for r in rep.reasons if r.startswith("sublink")]
                why = "sublink obstruction: " + (fired or list(rep.reasons))[0]
        if why:
            entry["excluded"] = why
            continue
        knotted = [(n, component_determinant(cur, n)) for n in cur.component_names]
        knotted = [(n, det) for n, det in knotted if det != 1]
        entry["knotted"] = knotted
        total = s + len(knotted)
        best = total if best is None else min(best, total)
    if s == 0:
        e = by_tag["()"]
        kn = " and ".join(f"det({n}) = {v}" for n, v in e["knotted"] or [])
        reasons.append("already split; " + (f"{kn}, each knotted component needs "
                                            f"its own self-change" if kn else
                                            "no component is knotted"))
        return best
    for tag in sorted(by_tag):
        e = by_tag[tag]
        ids = ", ".join(str(i) for i in e["ids"] if i is not None)
        if e["excluded"]:
            reasons.append(f"{tag} changes [{ids}] excluded: {e['excluded']}")
        else:
            kn = " and ".join(f"det({n}) = {v}" for n, v in e["knotted"])
            after = f"{kn} persist" if kn else "no component is knotted"
            reasons.append(f"{tag} changes [{ids}] may split; afterwards {after}, and "
                           f"each knotted component needs its own self-change")
    return best


def strategy_gap(d: PlanarDiagram, budget: SearchBudget | None = None,
                 witnesses: Iterable = (), seed: int | None = None) -> GapReport:
    """Compare optimal unlinking with strategies that split first."""
    budget = (budget or SearchBudget()).resolved(d)
    witnesses = tuple(witnesses)
    reasons: list[str] = []

    unl = search_unlink(d, budget, seed=seed)
    u_upper = unl.length if unl else None
    u_lower, r = lower_bound_unlink(d, witnesses, budget)
    reasons.append(f"unlinking: upper {u_upper}, lower {u_lower}")
    reasons.extend(r)

    spl = search_split(d, budget, witnesses, seed=seed)
    sp_upper = spl.length if spl else None
    sp_lower, r = lower_bound_split(d, witnesses)
    reasons.append(f"splitting: upper {sp_upper}, lower {sp_lower}")
    reasons.extend(r)

    split_first = None
    split_first_upper = None
    if sp_upper is not None and sp_upper == sp_lower:
        split_first = _split_first(d, budget, witnesses, sp_upper, reasons)
        if spl is not None:
            final = spl.replay[-1] if spl.replay else canonical_form(d)
            rest = search_unlink(final, SearchBudget(budget.max_changes,
                                                     budget.max_moves_per_stage), seed=seed)
            if rest is not None:
                split_first_upper = sp_upper + rest.length
        reasons.append(f"split-first strategies need at least {split_first} changes"
                       + (f"; one uses {split_first_upper}" if split_first_upper else ""))
    else:
        reasons.append("splitting number not pinned down; split-first bound not computed")

    certified = (
        u_upper is not None and u_upper == u_lower
        and sp_upper is not None and sp_upper == sp_lower
        and split_first is not None and split_first > u_upper
    )
    reasons.append("gap certified" if certified else "gap not certified")
    return GapReport(u_upper, u_lower, sp_upper, sp_lower, split_first, split_first_upper,
                     certified, tuple(reasons), unl, spl)
