"""Command-line entry point.

Exit codes: 0 the property holds or the relation was found, 1 it fails (a
witness is printed), 2 the input is malformed.  ``--json`` prints the same
report structure the human output is rendered from.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Callable

from . import files
from .bisim import greatest_topo_bisim, verify_homeo_topo_bisim, x_indexed_family
from .errors import (
    BudgetExceeded,
    ChainNotFound,
    ConnectiveNotInRegime,
    InputError,
    RegimeViolation,
    TopoModalError,
    TopologyError,
    UnknownAtom,
    UnknownPoint,
)
from .formula import parse
from .homotopy import DEFAULT_BUDGET, find_chain, verify_chain, verify_isotopy
from .mappings import DEFAULT_SIZE_CAP, PointMap, classify, verify_preservation
from .proplab import TheoremId, TrialConfig, run_theorem
from .robustness import Verdict, robustness_compare
from .semantics import extension, satisfies

# Errors that mean "the checked property fails" rather than "bad input".
FAILURES = (
    TopologyError,
    RegimeViolation,
    ConnectiveNotInRegime,
    UnknownAtom,
    UnknownPoint,
)


class Report(dict):
    """A command result: ``code`` is the exit status, ``render`` the human view."""

    def __init__(self, code: int, render: Callable[[dict], str], **fields):
        super().__init__(fields)
        self.code = code
        self.render = render


def _set(labels) -> str:
    return "{" + ", ".join(labels) + "}"


def _lines(*parts) -> str:
    return "\n".join(p for p in parts if p is not None)


# ------------------------------------------------------------- commands


def cmd_validate(args) -> Report:
    model = files.load_model(args.model)
    T = model.topology
    rep = Report(
        0,
        lambda r: _lines(
            f"valid: {r['name']} ({r['regime']}, {len(r['points'])} points, {len(r['opens'])} opens)",
            r.get("dot"),
        ),
        name=model.name,
        regime=model.regime.value,
        points=list(T.points),
        opens=[T.labels(u) for u in T.opens],
        valuation=model.valuation_labels(),
    )
    if args.dot:
        rep["dot"] = T.to_dot(model.name or "specialization").rstrip("\n")
    return rep


def cmd_eval(args) -> Report:
    model = files.load_model(args.model)
    phi = parse(args.formula)
    if args.at is not None:
        value = satisfies(model, args.at, phi)
        return Report(0, lambda r: "true" if r["value"] else "false", formula=args.formula, point=args.at, value=value)
    ext = model.topology.labels(extension(model, phi))
    return Report(0, lambda r: _set(r["extension"]), formula=args.formula, extension=ext)


def cmd_map(args) -> Report:
    f = files.load_map(args.map)
    c = classify(f).as_dict()

    def render(r):
        c = r["classification"]
        out = [
            f"continuous: {str(c['continuous']).lower()}"
            + ("" if c["continuous"] else f" (preimage of {_set(c['continuity_witness'])} is not open)"),
            f"open ({c['open_convention']}-set convention): {str(c['open_map']).lower()}"
            + ("" if c["open_map"] else f" (image of {_set(c['open_witness'])} fails)"),
            f"bijective: {str(c['bijective']).lower()}",
            f"homeomorphism: {str(c['homeomorphism']).lower()}",
        ]
        if r.get("require"):
            out.append(f"require {r['require']}: {'holds' if r['holds'] else 'fails'}")
        return "\n".join(out)

    holds = True
    if args.require:
        key = {"continuous": "continuous", "open": "open_map", "homeo": "homeomorphism"}[args.require]
        holds = c[key]
    return Report(0 if holds else 1, render, classification=c, require=args.require, holds=holds)


def cmd_preserve(args) -> Report:
    f = files.load_map(args.map)
    rep = verify_preservation(f, args.depth, args.direction, args.reading, args.size_cap).as_dict()

    def render(r):
        head = f"{r['direction']} preservation ({r['reading']}, depth {r['depth']}, size <= {r['size_cap']})"
        if r["ok"]:
            return f"{head}: pass, {r['formulas_checked']} formulas"
        cex = r["counterexample"]
        at = f" at {cex['point']} -> {cex['image']}" if "point" in cex else ""
        return f"{head}: counterexample {cex['formula']} ({cex['direction']}){at}"

    return Report(0 if rep["ok"] else 1, render, **rep)


def cmd_bisim(args) -> Report:
    m1, m2 = files.load_model(args.m1), files.load_model(args.m2)
    if args.homeo:
        f = files.load_map(args.homeo)
        rep = verify_homeo_topo_bisim(m1, m2, PointMap(m1, m2.topology, f.images), args.depth).as_dict()

        def render(r):
            if not r["ok"]:
                return f"homeo-topo-bisimulation: fails ({r['failure']['kind']}) {json.dumps(r['failure'], sort_keys=True)}"
            s = r["sweep"]
            return _lines(
                f"homeo-topo-bisimulation: holds ({r['reading']})",
                "pairs: " + ", ".join(f"({a},{b})" for a, b in r["relation"]),
                f"validity preserved to depth {s['depth']}: {str(s['validity_preserved']).lower()} ({s['formulas_checked']} formulas)",
            )

        return Report(0 if rep["ok"] else 1, render, **rep)
    rel = greatest_topo_bisim(m1, m2)
    pairs = rel.labels() if rel else []

    def render(r):
        if not r["pairs"]:
            return "no topo-bisimulation"
        return f"greatest topo-bisimulation: {len(r['pairs'])} pairs\n" + "\n".join(f"  {a} ~ {b}" for a, b in r["pairs"])

    return Report(0 if rel else 1, render, pairs=pairs)


def cmd_homotopy_find(args) -> Report:
    f, g = files.load_map(args.f), files.load_map(args.g)
    try:
        chain = find_chain(f, g, args.budget)
    except ChainNotFound as e:
        return Report(1, lambda r: f"NotFound: {r['message']}", status="NotFound", message=str(e), **e.details)
    except BudgetExceeded as e:
        return Report(1, lambda r: f"BudgetExceeded: {r['message']}", status="BudgetExceeded", message=str(e), **e.details)
    rep = verify_chain(chain).as_dict()
    maps = [m.labels() for m in chain.maps]

    def render(r):
        out = [f"fence found: {len(r['maps'])} maps"]
        for x, m in zip(r["indices"], r["maps"]):
            out.append(f"  x={x}: " + ", ".join(f"{a}->{b}" for a, b in m.items()))
        return "\n".join(out)

    return Report(0, render, status="found", maps=maps, indices=rep["indices"])


def cmd_homotopy_verify(args) -> Report:
    chain = files.load_chain(args.chain)
    if args.isotopy:
        rep = verify_isotopy(chain, args.depth, args.reading).as_dict()

        def render(r):
            if r["failure"]:
                return f"isotopy: fails {json.dumps(r['failure'], sort_keys=True)}"
            inv = r["invariance"]
            return _lines(
                f"isotopy: {'holds' if r['ok'] else 'fails'}",
                f"x = {', '.join(r['chain']['indices'])}",
                f"invariance disagreements: {inv['disagreements']} over {inv['formulas_checked']} formulas",
                f"valuation respected: {str(r['valuation_respected']).lower()}",
            )

        return Report(0 if rep["ok"] else 1, render, **rep)
    rep = verify_chain(chain).as_dict()

    def render(r):
        if r["ok"]:
            return f"chain: holds, x = {', '.join(r['indices'])}"
        return f"chain: fails {json.dumps(r['failure'], sort_keys=True)}"

    return Report(0 if rep["ok"] else 1, render, **rep)


def cmd_xindex(args) -> Report:
    model = files.load_model(args.model)
    f, g = files.load_map(args.f), files.load_map(args.g)
    if f.source != model or g.source != model:
        raise InputError("maps must start at the given model")
    try:
        rep = x_indexed_family(model, f, g, args.budget).as_dict()
    except ChainNotFound as e:
        return Report(1, lambda r: f"NotFound: {r['message']}", status="NotFound", message=str(e))

    def render(r):
        out = [f"x-indexed family: {len(r['entries'])} models"]
        for e in r["entries"]:
            out.append(
                f"  x={e['x']}: homeomorphism={str(e['homeomorphism']).lower()}"
                f" homeo-topo-bisimilar={str(e.get('homeo_topo_bisimilar')).lower()}"
            )
        return "\n".join(out)

    return Report(0, render, **rep)


def cmd_robust(args) -> Report:
    mi, mj = files.load_model(args.m1), files.load_model(args.m2)
    corr = files.load_correspondence(args.corr) if args.corr else None
    rep = robustness_compare(mi, mj, corr).as_dict()

    def render(r):
        out = [f"{r['verdict']} ({r['pairs_explored']} extension pairs)"]
        if r["first_violation_more"]:
            out.append(f"  not more robust: {r['first_violation_more']}")
        if r["first_violation_less"]:
            out.append(f"  not less robust: {r['first_violation_less']}")
        return "\n".join(out)

    return Report(1 if rep["verdict"] == Verdict.INCOMPARABLE.value else 0, render, **rep)


def cmd_fuzz(args) -> Report:
    cfg = TrialConfig(
        seed=args.seed,
        trials=args.trials,
        max_points=args.max_points,
        formula_depth=args.depth,
        reading=args.reading,
        size_cap=args.size_cap,
        ablate=frozenset(args.ablate),
        require=frozenset(args.require),
    )
    rep = run_theorem(args.theorem, cfg).as_dict()

    def render(r):
        out = [f"{r['theorem']} [{r['classification']}]: {r['passed']}/{r['trials']} pass"]
        if r["failed"]:
            out.append(f"  counterexamples: {r['failed']} (shrunk to {r['shrunk_points']} points)")
            out.append("  " + json.dumps(r["counterexample"]["detail"], sort_keys=True))
        if r["not_applicable"]:
            out.append(f"  hypotheses not met: {r['not_applicable']}")
        if r["refused_draws"]:
            out.append(f"  refused draws (inadmissible pushforward): {r['refused_draws']}")
        for w in r["witnesses"]:
            out.append(f"  n={w['n']}: " + ", ".join(f"{a}->{b}" for a, b in w["bijection"].items()))
        out.extend("  " + n for n in r["notes"])
        return "\n".join(out)

    return Report(1 if rep["failed"] else 0, render, **rep)


# --------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="topomodal", description="Modal logic over finite topological spaces.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help):
        sp = sub.add_parser(name, help=help)
        sp.set_defaults(fn=fn)
        sp.add_argument("--json", action="store_true", help="machine-readable report")
        return sp

    sp = add("validate", cmd_validate, "validate a model file")
    sp.add_argument("model")
    sp.add_argument("--dot", action="store_true", help="also print the specialization preorder as DOT")

    sp = add("eval", cmd_eval, "evaluate a formula")
    sp.add_argument("model")
    sp.add_argument("formula")
    sp.add_argument("--at", metavar="POINT")

    sp = add("map", cmd_map, "classify a map")
    sp.add_argument("map")
    sp.add_argument("--require", choices=["continuous", "open", "homeo"])

    sp = add("preserve", cmd_preserve, "sweep truth preservation along a map")
    sp.add_argument("map")
    sp.add_argument("--depth", type=int, default=3)
    sp.add_argument("--direction", choices=["forward", "backward", "both"], default="both")
    sp.add_argument("--reading", choices=["global", "pointwise"], default="global")
    sp.add_argument("--size-cap", type=int, default=DEFAULT_SIZE_CAP)

    sp = add("bisim", cmd_bisim, "greatest topo-bisimulation, or check a homeo-topo-bisimulation")
    sp.add_argument("m1")
    sp.add_argument("m2")
    sp.add_argument("--homeo", metavar="MAP")
    sp.add_argument("--depth", type=int, default=3)

    hp = sub.add_parser("homotopy", help="fence search and verification")
    hsub = hp.add_subparsers(dest="action", required=True)
    sp = hsub.add_parser("find", help="shortest fence between two maps")
    sp.set_defaults(fn=cmd_homotopy_find)
    sp.add_argument("--json", action="store_true")
    sp.add_argument("f")
    sp.add_argument("g")
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    sp = hsub.add_parser("verify", help="check a chain file")
    sp.set_defaults(fn=cmd_homotopy_verify)
    sp.add_argument("--json", action="store_true")
    sp.add_argument("chain")
    sp.add_argument("--isotopy", action="store_true")
    sp.add_argument("--depth", type=int, default=3)
    sp.add_argument("--reading", choices=["global", "pointwise"], default="global")

    sp = add("xindex", cmd_xindex, "index homeo-topo-bisimilar models along a fence")
    sp.add_argument("model")
    sp.add_argument("f")
    sp.add_argument("g")
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)

    sp = add("robust", cmd_robust, "compare two agents' models for robustness")
    sp.add_argument("m1")
    sp.add_argument("m2")
    sp.add_argument("--corr", metavar="FILE")

    sp = add("fuzz", cmd_fuzz, "randomized theorem trials")
    sp.add_argument("--theorem", required=True, choices=[t.value for t in TheoremId])
    sp.add_argument("--trials", type=int, default=100)
    sp.add_argument("--seed", type=int, default=42)
    sp.add_argument("--max-points", type=int, default=5)
    sp.add_argument("--depth", type=int, default=3)
    sp.add_argument("--reading", choices=["global", "pointwise", "both"], default="global")
    sp.add_argument("--size-cap", type=int, default=DEFAULT_SIZE_CAP)
    sp.add_argument("--ablate", action="append", default=[], metavar="HYPOTHESIS")
    sp.add_argument("--require", action="append", default=[], metavar="HYPOTHESIS")
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    try:
        report = args.fn(args)
    except FAILURES as e:
        return _error(args, e, 1)
    except (TopoModalError, ValueError) as e:
        return _error(args, e, 2)
    if args.json:
        print(json.dumps(dict(report), sort_keys=True, indent=2))
    else:
        print(report.render(report))
    return report.code


def _error(args, e: Exception, code: int) -> int:
    if isinstance(e, TopoModalError):
        data = e.as_dict()
    else:
        data = {"error": type(e).__name__, "message": str(e)}
    if getattr(args, "json", False):
        print(json.dumps(data, sort_keys=True, indent=2))
    else:
        print(f"error: {data['error']}: {data['message']}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
