"""Command-line front end.

Every command prints one JSON object on stdout::

    {"command": ..., "inputs": ..., "result": ..., "status": "ok" | "error", "reasons": [...]}

and exits 0 exactly when the status is ok.  Diagnostics go to stderr.
Diagrams are named by a file path or by ``catalog:<name>``.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import catalog
from .diagram import (
    DiagramError,
    classify_crossing,
    crossing_change,
    format_diagram,
    parse_diagram,
    sublink,
)
from .invariants import (
    alexander_polynomial,
    component_determinant,
    linking_numbers,
    seifert_algorithm,
)
from .obstructions import Witness, splitness_report
from .search import (
    SearchBudget,
    certify_split,
    certify_unknot,
    lower_bound_split,
    lower_bound_unlink,
    search_split,
    search_unlink,
    simplify,
    strategy_gap,
)


class CommandError(Exception):
    """Failure that becomes ``status: error`` with the given reasons."""

    def __init__(self, *reasons: str, result=None):
        super().__init__(reasons[0] if reasons else "error")
        self.reasons = list(reasons)
        self.result = result or {}


# ---------------------------------------------------------------------------
# helpers


def load_ref(ref: str):
    """Diagram and catalog entry (or None) for a file path or ``catalog:name``."""
    if ref.startswith("catalog:"):
        name = ref[len("catalog:"):]
        try:
            entry = catalog.load(name)
        except KeyError as e:
            raise CommandError(str(e.args[0]))
        except catalog.CatalogError as e:
            raise CommandError(f"catalog certification failed: {e}")
        return entry.diagram, entry
    try:
        text = Path(ref).read_text()
    except OSError as e:
        raise CommandError(f"cannot read {ref}: {e.strerror}")
    try:
        return parse_diagram(text), None
    except DiagramError as e:
        raise CommandError(f"{ref}: {e}")


def _crossing(d, entry, ref: str) -> int:
    if entry is not None:
        try:
            cid = catalog.resolve_crossing(entry, ref)
        except KeyError as e:
            raise CommandError(str(e.args[0]))
    else:
        try:
            cid = int(ref)
        except ValueError:
            raise CommandError(f"crossing must be an integer id, got {ref!r}")
    if cid not in d.crossing_map:
        raise CommandError(f"no crossing {cid} in the diagram")
    return cid


def _budget(args) -> SearchBudget:
    try:
        return SearchBudget(args.max_changes, args.max_moves, args.max_crossings)
    except ValueError as e:
        raise CommandError(str(e))


def _witnesses(args, d):
    """Witnesses for ``d``: the shipped band sums whose components exist in
    ``d`` (each is only used where its source sublink matches) plus any given
    with ``--witness``.  ``--skip-witnesses`` drops only the shipped ones."""
    out = []
    names = set(d.component_names)
    skip = getattr(args, "skip_witnesses", False)
    if not skip and len(names) > 1 and {"L1", "L2", "L3"} & names:
        try:
            shipped = catalog.paper_witnesses()
        except catalog.CatalogError as e:
            raise CommandError(f"catalog certification failed: {e}")
        out += [w for w in shipped if set(w.subset) <= names]
    for item in getattr(args, "witness", None) or []:
        subset, _, ref = item.partition("=")
        parts = tuple(p.strip() for p in subset.split(","))
        if len(parts) != 2 or not ref:
            raise CommandError(f"--witness expects A,B=REF, got {item!r}")
        missing = [p for p in parts if p not in names]
        if missing:
            raise CommandError(f"--witness names unknown components {missing}")
        knot, _ = load_ref(ref)
        out.append(Witness(parts, knot, None, ref))
    return out


def _lk_json(d):
    return {f"{a},{b}": v for (a, b), v in linking_numbers(d).items()}


# ---------------------------------------------------------------------------
# commands


def cmd_invariants(args):
    d, _ = load_ref(args.diagram)
    comps = {}
    for name in d.component_names:
        k = sublink(d, [name])
        data = seifert_algorithm(k)
        delta = alexander_polynomial(k)
        comps[name] = {
            "determinant": component_determinant(d, name),
            "alexander": str(delta),
            "alexander_coefficients": delta.to_json(),
            "seifert": {"circles": data.seifert_circle_count, "genus": data.genus,
                        "crossings": data.crossing_count},
        }
    names = list(d.component_names)
    lk = linking_numbers(d)
    matrix = [[0 if a == b else lk[tuple(sorted((a, b)))] for b in names] for a in names]
    return {"crossings": d.crossing_count, "components": comps,
            "linking_numbers": _lk_json(d), "linking_matrix": matrix,
            "visibly_split": len(d.pieces) == len(d.components)}, []


def cmd_change(args):
    d, entry = load_ref(args.diagram)
    cid = _crossing(d, entry, args.crossing)
    tag = classify_crossing(d, cid)
    out = crossing_change(d, cid)
    result = {"crossing": cid, "tag": str(tag), "diagram": format_diagram(out),
              "linking_numbers": _lk_json(out)}
    if len(out.components) > 1:
        result["split"] = certify_split(out, _budget(args)).to_json()
    return result, []


def cmd_sublink(args):
    d, _ = load_ref(args.diagram)
    unknown = [c for c in args.components if c not in d.component_names]
    if unknown:
        raise CommandError(f"unknown components {unknown}")
    return {"components": sorted(set(args.components)),
            "diagram": format_diagram(sublink(d, args.components))}, []


def cmd_simplify(args):
    d, _ = load_ref(args.diagram)
    s = simplify(d, _budget(args))
    return {"crossings_before": d.crossing_count, "crossings_after": s.crossing_count,
            "diagram": format_diagram(s)}, []


def cmd_search(args):
    d, _ = load_ref(args.diagram)
    budget = _budget(args)
    witnesses = _witnesses(args, d)
    if args.mode == "unlink":
        seq = search_unlink(d, budget)
        lower, reasons = lower_bound_unlink(d, witnesses, budget)
    else:
        seq = search_split(d, budget, witnesses)
        lower, reasons = lower_bound_split(d, witnesses)
    upper = seq.length if seq else None
    result = {"mode": args.mode, "sequence": seq.to_json() if seq else None,
              "upper_bound": upper, "lower_bound": lower, "exact": upper == lower}
    if seq is None:
        reasons = reasons + ["no sequence found within the budget"]
    return result, reasons


def cmd_obstruct(args):
    d, _ = load_ref(args.diagram)
    v = splitness_report(d, _witnesses(args, d))
    return v.to_json(), list(v.reasons)


def cmd_catalog_list(args):
    out = []
    for name in catalog.names():
        try:
            e = catalog.load(name)
        except catalog.CatalogError as err:
            raise CommandError(f"catalog certification failed: {err}")
        out.append({"name": name, "description": e.description,
                    "crossings": e.diagram.crossing_count,
                    "components": list(e.diagram.component_names),
                    "designated": e.designated})
    return {"directory": str(catalog.catalog_dir()), "entries": out}, []


def cmd_verify_paper(args):
    d, _ = load_ref("catalog:paper_L")
    budget = _budget(args)
    reasons: list[str] = []
    failed: list[str] = []
    result: dict = {}

    lk = linking_numbers(d)
    result["linking_numbers"] = _lk_json(d)
    if any(lk.values()):
        failed.append("all pairwise linking numbers of L are 0")
    else:
        reasons.append("all pairwise linking numbers of L are 0")

    witnesses = _witnesses(args, d)
    lemma = {}
    if witnesses:
        for w in witnesses:
            pair = ",".join(w.subset)
            v = splitness_report(sublink(d, w.subset), [w])
            lemma[pair] = v.to_json()
            if v.obstructed:
                reasons.append(f"sublink {{{pair}}} is not split")
                reasons.extend(v.reasons)
            else:
                failed.append(f"sublink {{{pair}}} is not split")
    else:
        reasons.append("witnesses skipped: sublink obstructions not run")
    result["sublink_obstructions"] = lemma

    gap = strategy_gap(d, budget, witnesses)
    result["strategy_gap"] = gap.to_json()
    reasons.extend(gap.reasons)
    sp_lower = gap.sp_lower if gap.sp_lower > 0 else "Unknown"
    result.update({"u": gap.u_upper if gap.u_upper == gap.u_lower else None,
                   "sp": gap.sp_upper if gap.sp_upper == gap.sp_lower else None,
                   "sp_bounds": [sp_lower, gap.sp_upper],
                   "u_bounds": [gap.u_lower, gap.u_upper],
                   "split_first_min": gap.split_first_min,
                   "gap_certified": gap.gap_certified})

    if gap.split_sequence is not None and gap.split_sequence.replay:
        after = gap.split_sequence.replay[-1]
        result["components_after_split"] = {
            n: certify_unknot(sublink(after, [n]), budget).status.value
            for n in after.component_names}

    claims = [
        (gap.sp_upper == 1, "sp(L) <= 1 by a (L1,L1) change"),
        (gap.sp_lower == 1, "sp(L) >= 1"),
        (gap.u_upper == 2, "u(L) <= 2"),
        (gap.u_lower == 2, "u(L) >= 2"),
        (gap.split_first_min is not None and gap.split_first_min >= 3,
         "split-first strategies need at least 3 changes"),
        (gap.gap_certified, "gap certified"),
    ]
    if gap.split_sequence is not None:
        tags = [str(t) for t in gap.split_sequence.tags]
        claims.insert(0, (tags == ["(L1,L1)"], "the splitting change is an (L1,L1) change"))
    for ok, claim in claims:
        if not ok:
            failed.append(claim)
    if failed:
        raise CommandError(*[f"failed: {c}" for c in failed], *reasons, result=result)
    return result, reasons


# ---------------------------------------------------------------------------
# plumbing


def _add_budget(p):
    p.add_argument("--max-changes", type=int, default=3, help="crossing changes per search")
    p.add_argument("--max-moves", type=int, default=5000,
                   help="diagrams explored per simplification stage")
    p.add_argument("--max-crossings", type=int, default=None,
                   help="largest diagram allowed (default: start + 4)")


def _add_witness(p):
    p.add_argument("--skip-witnesses", action="store_true",
                   help="ignore the shipped band-sum witnesses")
    p.add_argument("--witness", action="append", metavar="A,B=REF",
                   help="band-sum knot for components A and B (repeatable)")


def build_parser() -> argparse.ArgumentParser:
    # --json-indent is accepted before or after the command
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json-indent", type=int, default=argparse.SUPPRESS,
                        help="0 for one line (default 2)")
    ap = argparse.ArgumentParser(prog="linklab", description="Link diagram toolkit.",
                                 parents=[common])
    sub = ap.add_subparsers(dest="command", required=True)
    _sub = sub.add_parser

    def add_parser(*a, **k):
        return _sub(*a, parents=[common], **k)

    sub.add_parser = add_parser

    p = sub.add_parser("invariants", help="determinants, Alexander polynomials, linking")
    p.add_argument("diagram")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("change", help="change one crossing")
    p.add_argument("diagram")
    p.add_argument("crossing", help="crossing id or designated name")
    _add_budget(p)
    p.set_defaults(func=cmd_change)

    p = sub.add_parser("sublink", help="keep only some components")
    p.add_argument("diagram")
    p.add_argument("components", nargs="+")
    p.set_defaults(func=cmd_sublink)

    p = sub.add_parser("simplify", help="reduce crossings with Reidemeister moves")
    p.add_argument("diagram")
    _add_budget(p)
    p.set_defaults(func=cmd_simplify)

    p = sub.add_parser("search", help="shortest unlinking or splitting sequence")
    p.add_argument("diagram")
    p.add_argument("--mode", choices=("unlink", "split"), default="unlink")
    _add_budget(p)
    _add_witness(p)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("obstruct", help="run the splitting obstructions")
    p.add_argument("diagram")
    _add_witness(p)
    p.set_defaults(func=cmd_obstruct)

    p = sub.add_parser("verify-paper", help="check every claim about the catalog link L")
    _add_budget(p)
    _add_witness(p)
    p.set_defaults(func=cmd_verify_paper)

    p = sub.add_parser("catalog", help="catalog commands")
    csub = p.add_subparsers(dest="catalog_command", required=True)
    c = csub.add_parser("list", help="list certified entries", parents=[common])
    c.set_defaults(func=cmd_catalog_list)
    return ap


def _inputs(args) -> dict:
    skip = {"func", "json_indent"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    command = args.command if args.command != "catalog" else "catalog " + args.catalog_command
    out = {"command": command, "inputs": _inputs(args)}
    try:
        result, reasons = args.func(args)
        out.update(result=result, status="ok", reasons=reasons)
    except CommandError as e:
        out.update(result=e.result, status="error", reasons=e.reasons)
        print(f"linklab {command}: {e.reasons[0]}", file=sys.stderr)
    indent = getattr(args, "json_indent", 2) or None
    print(json.dumps(out, indent=indent, sort_keys=True))
    return 0 if out["status"] == "ok" else 1


if __name__ == "__main__":
    raise SystemExit(main())
