"""Command-line front end.

Exit codes: 0 success, 1 invalid graph, 2 unsupported class, formula or
truncation, 3 verification failure.  Every failure prints a JSON object with
a machine-readable ``reason``.

JSON shapes (all subcommands share ``graph_class`` where a graph is given):

* validate: graph_class, negative_definite, det_abs, b1, cycles, valencies,
  canonical_e (E-coordinates of K as "p/q" strings), zk_equals_e
* zeta / motivic: graph_class, order, series {slot: [{"exp", "coeff"}]},
  verdicts {name: "pass"|"fail"}, warnings
* hilbert: graph_class, order, at (E-coordinates), estar, h, support, p_values,
  and round_trip {checked, max_deviation} with ``--round-trip``
* verify: suites [{suite, result, checks [{name, identity, result, detail}]}], verdicts
* closure: closure {estar, start, closure, trace}, arrangement {estar,
  ambient_dim, intersections [{subset, dim, codim}], euler, motivic_class}
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import zoo
from .closure import arrangement_profile, j_closure
from .errors import NotInSprime, TruncationInsufficient, UnsupportedClass
from .graph import GraphClass, GraphError, ResolutionGraph, classify, cycle_count, first_betti, intersection_matrix, parse_graph
from .hilbert import hilbert_from_p, hilbert_round_trip, lattice_points
from .lattice import NotNegativeDefinite, build_context, first_definiteness_failure, format_rational
from .motivic import MotivicPoly
from .verify import SUITES, run_suite
from .zeta import applicable_slots, build_bundle, zeta_incexc, zeta_product

EXIT_OK, EXIT_INVALID, EXIT_UNSUPPORTED, EXIT_FAILED = 0, 1, 2, 3

FORMULAS = {
    "product": "z_product",
    "binomial": "z_binomial",
    "incexc": "z_incexc",
    "arrangement": "z_arrangement",
    "cusp-closed": "z_cusp_closed",
}
VARIANTS = {
    "tree": "motivic_tree",
    "eca-product": "motivic_eca_product",
    "eca-strata": "motivic_eca_strata",
    "cusp": "motivic_cusp",
}


class CliError(Exception):
    def __init__(self, code: int, reason: str, message: str, **extra):
        super().__init__(message)
        self.code = code
        self.reason = reason
        self.extra = extra


# -- input ----------------------------------------------------------------
def read_graph(args) -> ResolutionGraph | None:
    try:
        if args.zoo:
            return zoo.load(args.zoo)
        if args.stdin:
            return parse_graph(sys.stdin.read())
        if args.input:
            with open(args.input, encoding="utf-8") as fh:
                return parse_graph(fh.read())
    except GraphError as exc:
        raise CliError(EXIT_INVALID, exc.reason, str(exc)) from exc
    except OSError as exc:
        raise CliError(EXIT_INVALID, "unreadable_input", str(exc)) from exc
    return None


def require_graph(args) -> ResolutionGraph:
    g = read_graph(args)
    if g is None:
        raise CliError(EXIT_INVALID, "no_input", "give --input PATH, --stdin or --zoo NAME")
    return g


def context_for(g: ResolutionGraph):
    try:
        return build_context(g)
    except NotNegativeDefinite as exc:
        raise CliError(
            EXIT_INVALID, "not_negative_definite", str(exc), minor_index=exc.index, minor=exc.minor
        ) from exc


def parse_ints(text: str, what: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError as exc:
        raise CliError(EXIT_INVALID, "bad_argument", f"{what} must be comma separated integers") from exc


# -- output ---------------------------------------------------------------
def emit(args, payload: dict) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2))
        return
    for line in render_table(payload):
        print(line)


def render_table(payload: dict) -> list[str]:
    lines = []
    for key, value in payload.items():
        if key == "series":
            for slot, rows in value.items():
                lines.append(f"[{slot}]")
                for row in rows:
                    c = row["coeff"]
                    text = str(MotivicPoly.from_json(c)) if isinstance(c, dict) else str(c)
                    lines.append(f"  {tuple(row['exp'])}  {text}")
        elif key == "verdicts":
            for name, verdict in value.items():
                lines.append(f"{verdict.upper():4}  {name}")
        elif key == "suites":
            for suite in value:
                lines.append(f"[{suite['suite']}] {suite['result']}")
                for check in suite["checks"]:
                    detail = f"  ({check['detail']})" if check.get("detail") else ""
                    lines.append(f"  {check['result'].upper():4}  {check['name']}: {check['identity']}{detail}")
        elif isinstance(value, (dict, list)):
            if not value:
                continue
            lines.append(f"{key}: {json.dumps(value)}")
        else:
            lines.append(f"{key}: {value}")
    return lines


# -- commands -------------------------------------------------------------
def cmd_validate(args) -> int:
    g = require_graph(args)
    m = intersection_matrix(g)
    failure = first_definiteness_failure(m)
    report = {
        "graph_class": str(classify(g)),
        "negative_definite": failure is None,
        "b1": first_betti(g),
        "cycles": cycle_count(g),
        "valencies": dict(zip(g.ids, g.valencies)),
    }
    if failure is not None:
        index, minor = failure
        raise CliError(
            EXIT_INVALID,
            "not_negative_definite",
            f"leading minor {index} is {minor}, with the wrong sign",
            minor_index=index,
            minor=minor,
            **report,
        )
    ctx = build_context(g)
    report["det_abs"] = ctx.det_abs
    report["canonical_e"] = dict(zip(g.ids, (format_rational(k) for k in ctx.canonical)))
    report["zk_equals_e"] = ctx.is_anticanonical_reduced()
    emit(args, report)
    return EXIT_OK


def _series_payload(ctx, order: int, slots: list[str]) -> dict:
    try:
        bundle = build_bundle(ctx, order, slots)
    except UnsupportedClass as exc:
        raise CliError(EXIT_UNSUPPORTED, "unsupported_class", str(exc), graph_class=str(ctx.graph_class)) from exc
    payload = bundle.to_json()
    payload["verdicts"] = {}
    payload["warnings"] = []
    return payload | {"_bundle": bundle}


def _finish(args, payload: dict) -> int:
    payload.pop("_bundle", None)
    for w in payload["warnings"]:
        print(f"warning: {w}", file=sys.stderr)
    emit(args, payload)
    return EXIT_FAILED if "fail" in payload["verdicts"].values() else EXIT_OK


def _agreement(bundle, names: Sequence[str]) -> str:
    first = bundle.slots[names[0]]
    return "pass" if all(bundle.slots[n] == first for n in names[1:]) else "fail"


def cmd_zeta(args) -> int:
    ctx = context_for(require_graph(args))
    cls = ctx.graph_class
    if args.formula == "all":
        if cls is GraphClass.TREE_RATIONAL:
            slots = ["z_product", "z_binomial", "z_incexc", "z_arrangement"]
        elif cls is GraphClass.CUSP_CYCLE:
            slots = ["z_incexc", "z_arrangement", "z_cusp_closed"]
        else:
            raise CliError(EXIT_UNSUPPORTED, "unsupported_class", f"no series formulas compared for a {cls} graph", graph_class=str(cls))
    else:
        slots = [FORMULAS[args.formula]]
    payload = _series_payload(ctx, args.order, slots)
    if args.formula == "all":
        payload["verdicts"]["agreement"] = _agreement(payload["_bundle"], slots)
    if cls is GraphClass.CUSP_CYCLE and args.formula in ("product", "binomial"):
        payload["warnings"].append("the classical product is the constant 1 on a cusp cycle and carries no information")
    return _finish(args, payload)


def cmd_motivic(args) -> int:
    ctx = context_for(require_graph(args))
    cls = ctx.graph_class
    motivic = [s for s in applicable_slots(ctx) if s.startswith("motivic_")]
    slots = motivic if args.variant == "all" else [VARIANTS[args.variant]]
    if not slots:
        raise CliError(EXIT_UNSUPPORTED, "unsupported_class", f"no motivic series for a {cls} graph", graph_class=str(cls))
    payload = _series_payload(ctx, args.order, slots)
    if args.variant == "all":
        bundle = payload["_bundle"]
        verdicts = payload["verdicts"]
        verdicts["eca_strata_vs_eca_product"] = _agreement(bundle, ["motivic_eca_product", "motivic_eca_strata"])
        if cls is GraphClass.TREE_RATIONAL:
            verdicts["tree_vs_eca_product"] = _agreement(bundle, ["motivic_tree", "motivic_eca_product"])
            ok = bundle.slots["motivic_tree"].specialize_L() == zeta_product(ctx, args.order)
            verdicts["specialization_L1"] = "pass" if ok else "fail"
        elif cls is GraphClass.CUSP_CYCLE:
            ok = bundle.slots["motivic_cusp"].specialize_L() == zeta_incexc(ctx, args.order)
            verdicts["specialization_L1"] = "pass" if ok else "fail"
    return _finish(args, payload)


def _poincare(ctx, order: int):
    if ctx.graph_class is GraphClass.CUSP_CYCLE:
        return zeta_incexc(ctx, order)
    if ctx.graph_class is GraphClass.TREE_RATIONAL:
        return zeta_product(ctx, order)
    raise CliError(EXIT_UNSUPPORTED, "unsupported_class", f"no Poincare series for a {ctx.graph_class} graph", graph_class=str(ctx.graph_class))


def cmd_hilbert(args) -> int:
    ctx = context_for(require_graph(args))
    r = parse_ints(args.at or "", "--at") or (0,) * ctx.size
    if len(r) != ctx.size:
        raise CliError(EXIT_INVALID, "bad_argument", f"--at needs {ctx.size} E-coordinates, got {len(r)}")
    p = _poincare(ctx, args.order)
    estar = ctx.from_e_coords(r).estar_coords
    try:
        value = hilbert_from_p(ctx, p, estar)
    except TruncationInsufficient as exc:
        raise CliError(
            EXIT_UNSUPPORTED, "truncation_insufficient", str(exc), required_order=exc.required, available_order=exc.available
        ) from exc
    payload = {"graph_class": str(ctx.graph_class), "order": args.order, "at": list(r)} | value.to_json()
    payload["estar"] = [int(x) for x in payload["estar"]]
    if args.round_trip:
        rt = hilbert_round_trip(ctx, p, lattice_points(ctx, -1, 2))
        deviation = max((abs(got - want) for _, want, got in rt.mismatches), default=0)
        payload["round_trip"] = {"checked": rt.checked, "max_deviation": deviation}
        payload["verdicts"] = {"round_trip": "pass" if deviation == 0 else "fail"}
    emit(args, payload)
    return EXIT_FAILED if payload.get("verdicts", {}).get("round_trip") == "fail" else EXIT_OK


def cmd_verify(args) -> int:
    extra = read_graph(args)
    if extra is not None:
        context_for(extra)
    reports = run_suite(args.suite, seed=args.seed, extra=extra)
    payload = {
        "suites": [
            {"suite": r.suite, "result": "pass" if r.passed else "fail", "checks": [c.to_json() for c in r.checks]}
            for r in reports
        ],
        "verdicts": {r.suite: "pass" if r.passed else "fail" for r in reports},
    }
    emit(args, payload)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAILED


def cmd_closure(args) -> int:
    ctx = context_for(require_graph(args))
    a = parse_ints(args.estar or "", "--estar") or (0,) * ctx.size
    if len(a) != ctx.size:
        raise CliError(EXIT_INVALID, "bad_argument", f"--estar needs {ctx.size} coordinates, got {len(a)}")
    ids = ctx.graph.ids
    start = []
    for name in (args.subset or "").split(","):
        name = name.strip()
        if not name:
            continue
        if name not in ids:
            raise CliError(EXIT_INVALID, "bad_argument", f"unknown vertex {name!r} in --subset")
        start.append(ids.index(name))
    payload = {"graph_class": str(ctx.graph_class), "closure": j_closure(ctx, a, start).to_json(ids)}
    try:
        payload["arrangement"] = arrangement_profile(ctx, a).to_json(ids)
    except NotInSprime as exc:
        raise CliError(EXIT_INVALID, "not_in_sprime", str(exc)) from exc
    except UnsupportedClass as exc:
        payload["arrangement"] = None
        payload["warnings"] = [str(exc)]
    emit(args, payload)
    return EXIT_OK


# -- parser ---------------------------------------------------------------
def _non_negative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    source = common.add_mutually_exclusive_group()
    source.add_argument("--input", metavar="PATH", help="graph JSON file")
    source.add_argument("--stdin", action="store_true", help="read the graph JSON from standard input")
    source.add_argument("--zoo", choices=zoo.NAMES, help="use a built-in graph")
    common.add_argument("--order", type=_non_negative, default=6, help="truncation order N (default 6)")
    common.add_argument("--format", choices=("json", "table"), default="json")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized suites")

    parser = argparse.ArgumentParser(prog="plumbzeta", description="Series of plumbing graphs: rational trees and cusp cycles.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="lattice data and classification")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("zeta", parents=[common], help="topological series")
    p.add_argument("--formula", choices=tuple(FORMULAS) + ("all",), default="all")
    p.set_defaults(func=cmd_zeta)

    p = sub.add_parser("motivic", parents=[common], help="motivic and Cartier divisor series")
    p.add_argument("--variant", choices=tuple(VARIANTS) + ("all",), default="all")
    p.set_defaults(func=cmd_motivic)

    p = sub.add_parser("hilbert", parents=[common], help="Hilbert function value from the Poincare series")
    p.add_argument("--at", metavar="R1,...,RS", help="E-coordinates of l' in L (default 0)")
    p.add_argument("--round-trip", action="store_true", help="also recover p from h on a box of lattice points")
    p.set_defaults(func=cmd_hilbert)

    p = sub.add_parser("verify", parents=[common], help="run identity suites over the graph zoo")
    p.add_argument("--suite", choices=SUITES + ("all",), default="all")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("closure", parents=[common], help="J-closure and arrangement data at one l'")
    p.add_argument("--estar", metavar="A1,...,AS", help="E*-coordinates of l' (default 0)")
    p.add_argument("--subset", metavar="ID,...", help="starting vertex set I")
    p.set_defaults(func=cmd_closure)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        body = {"error": str(exc), "reason": exc.reason} | exc.extra
        if args.format == "json":
            print(json.dumps(body, indent=2))
        else:
            print(f"error ({exc.reason}): {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
