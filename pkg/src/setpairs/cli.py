"""Command-line entry point: ``setpairs <command> ...``.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 search
budget exhausted (the partial result is still printed).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Sequence, TextIO

from . import acceptance, bounds
from .cliques import DEFAULT_VERTEX_BUDGET, BudgetError
from .constructions import (
    colex_skew_system,
    ekr_star,
    erdos_lovasz_pairs,
    tuza_tau_k_family,
    weakly_triple_system,
)
from .families import (
    SetFamily,
    closure_I,
    covering_number,
    doubled_pair_system,
    is_intersecting,
    is_maximal_intersecting,
    minimal_generator,
    witness_pair_system,
)
from .search import (
    SearchResult,
    catalog_maximal_families,
    count_maximal_intersecting,
    default_node_budget,
    search_f,
    search_g,
    search_vertex_max,
)
from .systems import PairFlavor, SetPairSystem, bollobas_weight, verify_flavor, vertex_set

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

CONSTRUCTIONS = ("tuza", "erdos-lovasz", "colex-skew", "weakly-triple", "ekr-star")

SEARCH_ANCHORS = {
    "M": "maximal cliques of the intersection graph on k-subsets",
    "f": "largest union of a k-uniform intersecting family with covering number k",
    "g": "largest A-union of a (k,k) cross system with intersecting A-sides",
    "n": "largest vertex set of a (k,l) cross-intersecting system",
    "n1": "largest vertex set of a (k,l) skew cross-intersecting system",
    "n2": "largest vertex set of a (k,l) weakly cross-intersecting system",
}


class UsageError(Exception):
    pass


# ------------------------------------------------------------------ output

def _dump(obj: Any, out: TextIO) -> None:
    out.write(json.dumps(obj) + "\n")


def _table(rows: list[dict], columns: Sequence[str], out: TextIO) -> None:
    cells = [[_cell(r.get(c)) for c in columns] for r in rows]
    widths = [max([len(c)] + [len(row[i]) for row in cells]) for i, c in enumerate(columns)]
    out.write("  ".join(c.ljust(w) for c, w in zip(columns, widths)).rstrip() + "\n")
    for row in cells:
        out.write("  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip() + "\n")


def _cell(v: Any) -> str:
    if v is None:
        return ""
    if isinstance(v, dict):
        return ",".join(f"{k}={x}" for k, x in v.items())
    if isinstance(v, list):
        return ",".join(map(str, v))
    return str(v)


def _kv_table(obj: dict, out: TextIO) -> None:
    _table([{"field": k, "value": json.dumps(v) if isinstance(v, (dict, list)) else v}
            for k, v in obj.items()], ("field", "value"), out)


def _emit(obj: dict, args: argparse.Namespace, out: TextIO) -> None:
    if args.table:
        _kv_table(obj, out)
    else:
        _dump(obj, out)


# ------------------------------------------------------------------- input

def _read_json(path: str | None, stdin: TextIO) -> dict:
    try:
        if path is None or path == "-":
            text = stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"input is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise UsageError("input must be a JSON object")
    return data


def _as_system(data: dict) -> SetPairSystem:
    if "pairs" not in data:
        raise UsageError("expected a set-pair system with a 'pairs' field")
    return SetPairSystem.from_json(data)


def _as_family(data: dict, n: int | None, k: int | None) -> SetFamily:
    if "sets" not in data:
        raise UsageError("expected a set family with a 'sets' field")
    fam = SetFamily.from_json(data)
    if k is None:
        k = fam.k
    if k is None:
        sizes = {len(s) for s in fam}
        if len(sizes) != 1:
            raise UsageError("family is not uniform; pass --k")
        k = sizes.pop()
    return SetFamily(fam.n if n is None else n, fam.sets, k)


# ---------------------------------------------------------------- commands

def cmd_construct(args: argparse.Namespace, out: TextIO, stdin: TextIO) -> int:
    name, k = args.name, args.k
    l = k if args.l is None else args.l
    if name == "tuza":
        obj: SetFamily | SetPairSystem = tuza_tau_k_family(k)
    elif name == "erdos-lovasz":
        obj = erdos_lovasz_pairs(k)
    elif name == "colex-skew":
        obj = colex_skew_system(k, l)
    elif name == "weakly-triple":
        obj = weakly_triple_system(k, l)
    else:
        if args.n is None:
            raise UsageError("ekr-star needs --n")
        obj = ekr_star(args.n, k, args.e)
    if args.table:
        if isinstance(obj, SetPairSystem):
            _table([{"i": i, "A": a.to_json(), "B": b.to_json()} for i, (a, b) in enumerate(obj.pairs)],
                   ("i", "A", "B"), out)
        else:
            _table([{"i": i, "set": s.to_json()} for i, s in enumerate(obj.sets)], ("i", "set"), out)
    else:
        _dump(obj.to_json(), out)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace, out: TextIO, stdin: TextIO) -> int:
    data = _read_json(args.input, stdin)
    if "sets" in data and "pairs" not in data:
        fam = SetFamily.from_json(data)
        ok = is_intersecting(fam)
        _emit({"ok": ok, "property": "intersecting", "members": len(fam)}, args, out)
        return EXIT_OK if ok else EXIT_VERIFY
    system = _as_system(data)
    flavor = PairFlavor.parse(args.flavor) if args.flavor else system.flavor
    check = verify_flavor(system, flavor)
    report = {"flavor": flavor.value, **check.to_json(),
              "pairs": len(system.pairs), "vertices": len(vertex_set(system))}
    if all(a.isdisjoint(b) for a, b in system.pairs):
        report["bollobas_weight"] = bounds.format_number(bollobas_weight(system))
    _emit(report, args, out)
    return EXIT_OK if check.ok else EXIT_VERIFY


def cmd_bounds(args: argparse.Namespace, out: TextIO, stdin: TextIO) -> int:
    reports = bounds.bound_reports(args.k, args.l, args.n)
    rows = [r.to_json(refs=args.refs) for r in reports]
    if args.table:
        cols = ["name", "params", "value", "kind", "flags", "note"] + (["anchor"] if args.refs else [])
        _table(rows, cols, out)
    else:
        _dump(rows, out)
    return EXIT_OK


def cmd_family(args: argparse.Namespace, out: TextIO, stdin: TextIO) -> int:
    fam = _as_family(_read_json(args.input, stdin), args.n, args.k)
    n, k = fam.n, fam.k
    if args.op == "closure":
        result = closure_I(fam, n, k)
        if args.table:
            _table([{"i": i, "set": s.to_json()} for i, s in enumerate(result.sets)], ("i", "set"), out)
        else:
            _dump(result.to_json(), out)
        return EXIT_OK
    if args.op == "maximal":
        ok = is_maximal_intersecting(fam, n, k)
        _emit({"maximal": ok, "intersecting": is_intersecting(fam), "members": len(fam)}, args, out)
        return EXIT_OK if ok else EXIT_VERIFY
    if args.op == "tau":
        tau, trans = covering_number(fam)
        _emit({"tau": str(tau), "transversal": trans.to_json()}, args, out)
        return EXIT_OK
    if not is_maximal_intersecting(fam, n, k):
        _emit({"ok": False, "error": "generator needs a maximal intersecting family"}, args, out)
        return EXIT_VERIFY
    gw = minimal_generator(fam, n, k)
    cross = verify_flavor(witness_pair_system(gw, k), PairFlavor.CROSS)
    skew = verify_flavor(doubled_pair_system(gw, k), PairFlavor.SKEW)
    report = {**gw.to_json(), "size": len(gw.generator), "cross_ok": cross.ok, "doubled_skew_ok": skew.ok}
    _emit(report, args, out)
    return EXIT_OK if cross.ok and skew.ok else EXIT_VERIFY


def _need(args: argparse.Namespace, *names: str) -> None:
    missing = [f"--{n}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"--quantity {args.quantity} needs {' '.join(missing)}")


def cmd_search(args: argparse.Namespace, out: TextIO, stdin: TextIO) -> int:
    q = args.quantity
    budget = args.budget_nodes if args.budget_nodes is not None else default_node_budget()
    timed = {"budget": budget, "time_budget": args.budget_seconds}
    try:
        if q == "M":
            _need(args, "n", "k")
            res = count_maximal_intersecting(args.n, args.k, workers=args.workers,
                                             vertex_budget=args.vertex_budget, **timed)
            if args.catalog and not res.proven_optimal:
                res.notes.append("catalog skipped: the count did not finish within budget")
            elif args.catalog:
                with open(args.catalog, "w", encoding="utf-8") as fh:
                    for fam in catalog_maximal_families(args.n, args.k, vertex_budget=args.vertex_budget):
                        fh.write(json.dumps(fam.to_json()) + "\n")
        elif q == "f":
            _need(args, "k")
            res = search_f(args.k, cap=args.cap, **timed)
        elif q == "g":
            _need(args, "k")
            res = search_g(args.k, workers=args.workers, use_closed_form_bounds=args.use_closed_form_bounds, **timed)
        else:
            _need(args, "k")
            l = args.k if args.l is None else args.l
            flavor = {"n": PairFlavor.CROSS, "n1": PairFlavor.SKEW, "n2": PairFlavor.WEAKLY}[q]
            warm = _as_system(_read_json(args.warm_start, stdin)) if args.warm_start else None
            res = search_vertex_max(args.k, l, flavor, workers=args.workers,
                                    use_closed_form_bounds=args.use_closed_form_bounds, warm_start=warm, **timed)
    except BudgetError as exc:
        _emit({"quantity": q, "error": str(exc), "required": str(exc.required)}, args, out)
        return EXIT_BUDGET
    if args.emit_witness and res.witness is not None:
        with open(args.emit_witness, "w", encoding="utf-8") as fh:
            fh.write(json.dumps(res.witness.to_json()) + "\n")
    _emit(_search_json(res, args), args, out)
    return EXIT_OK if res.proven_optimal else EXIT_BUDGET


def _search_json(res: SearchResult, args: argparse.Namespace) -> dict:
    obj = res.to_json(timings=args.timings)
    if args.refs:
        obj["anchor"] = SEARCH_ANCHORS[args.quantity]
    return obj


def cmd_reproduce(args: argparse.Namespace, out: TextIO, stdin: TextIO) -> int:
    try:
        chosen = acceptance.select(args.only)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    outcomes = []
    for c in chosen:
        o = acceptance.run_criterion(c)
        outcomes.append(o)
        if not args.json and not args.table:
            out.write(o.headline() + "\n")
            for line in o.lines:
                out.write(f"    {line}\n")
            out.flush()
    figures = []
    if args.figures:
        from .figures import render_all  # matplotlib only loads when figures are asked for

        figures = [str(p) for p in render_all(args.figures)]
    passed = all(o.passed for o in outcomes)
    if args.json:
        _dump({"passed": passed, "criteria": [o.to_json() for o in outcomes], "figures": figures}, out)
    elif args.table:
        _table([{"criterion": o.number, "name": o.name, "result": "pass" if o.passed else "FAIL",
                 "seconds": f"{o.seconds:.2f}", "limit": f"{o.limit:g}"} for o in outcomes],
               ("criterion", "name", "result", "seconds", "limit"), out)
    else:
        for f in figures:
            out.write(f"figure: {f}\n")
        good = sum(o.passed for o in outcomes)
        out.write(f"{good}/{len(outcomes)} criteria pass\n")
    return EXIT_OK if passed else EXIT_VERIFY


# ------------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--table", action="store_true", default=argparse.SUPPRESS,
                        help="aligned text instead of JSON")
    common.add_argument("--refs", action="store_true", default=argparse.SUPPRESS,
                        help="annotate emitted values with their source formula or result")

    p = argparse.ArgumentParser(prog="setpairs",
                                description="Set-pair systems and maximal intersecting families.")
    # separate actions: defaults set here must not leak into the shared parent
    p.add_argument("--table", action="store_true", help="aligned text instead of JSON")
    p.add_argument("--refs", action="store_true",
                   help="annotate emitted values with their source formula or result")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", parents=[common], help="emit a known construction")
    c.add_argument("--name", required=True, choices=CONSTRUCTIONS)
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--l", type=int)
    c.add_argument("--n", type=int, help="ground set size (ekr-star)")
    c.add_argument("--e", type=int, default=1, help="star centre (ekr-star)")
    c.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify", parents=[common], help="check a set-pair system or family")
    v.add_argument("--flavor", choices=[f.value for f in PairFlavor])
    v.add_argument("--in", dest="input", help="input file (default stdin)")
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bounds", parents=[common], help="evaluate closed-form bounds")
    b.add_argument("--k", type=int, required=True)
    b.add_argument("--l", type=int)
    b.add_argument("--n", type=int)
    b.set_defaults(func=cmd_bounds)

    f = sub.add_parser("family", parents=[common], help="operations on a k-uniform family")
    f.add_argument("--op", required=True, choices=("closure", "maximal", "tau", "generator"))
    f.add_argument("--in", dest="input", help="input file (default stdin)")
    f.add_argument("--n", type=int, help="override the ground set size")
    f.add_argument("--k", type=int, help="override the uniformity")
    f.set_defaults(func=cmd_family)

    s = sub.add_parser("search", parents=[common], help="exact search for an extremal quantity")
    s.add_argument("--quantity", required=True, choices=tuple(SEARCH_ANCHORS))
    s.add_argument("--n", type=int)
    s.add_argument("--k", type=int)
    s.add_argument("--l", type=int)
    s.add_argument("--cap", type=int, help="universe cap for f")
    s.add_argument("--budget-nodes", type=int,
                   help="node budget (default: SETPAIR_BUDGET_NODES or 5000000)")
    s.add_argument("--budget-seconds", type=float, help="wall-clock budget")
    s.add_argument("--vertex-budget", type=int, default=DEFAULT_VERTEX_BUDGET,
                   help="largest C(n,k) accepted for M")
    s.add_argument("--emit-witness", metavar="PATH")
    s.add_argument("--catalog", metavar="PATH", help="write every maximal family as JSON lines (M)")
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--warm-start", metavar="PATH", help="known system used as the first incumbent")
    s.add_argument("--closed-form-bounds", dest="use_closed_form_bounds", action="store_true",
                   help="also prune with the closed-form vertex bounds")
    s.add_argument("--timings", action="store_true", help="include wall_time in the output")
    s.set_defaults(func=cmd_search)

    r = sub.add_parser("reproduce", parents=[common], help="run the reproduction suite")
    r.add_argument("--only", help="comma-separated criterion names or numbers")
    r.add_argument("--json", action="store_true")
    r.add_argument("--figures", metavar="DIR", help="also write plots into DIR")
    r.set_defaults(func=cmd_reproduce)
    return p


def run(argv: Sequence[str] | None = None, out: TextIO | None = None, stdin: TextIO | None = None) -> int:
    out = sys.stdout if out is None else out
    stdin = sys.stdin if stdin is None else stdin
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args, out, stdin)
    except (UsageError, ValueError) as exc:
        sys.stderr.write(f"setpairs: error: {exc}\n")
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
