"""Command-line front end.

Exit codes: 0 the predicate/claim holds, 1 it does not (a witness or
counterexample is printed), 2 the input or the request was invalid.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from digicov.catalog import catalog_names, cyclic_cover, interval_image, scc_catalog, wrap_map
from digicov.covering import PREDICATES, SCAN_PREDICATES, check_original_pseudocovering, classify
from digicov.lattice import DomainError
from digicov.morphism import DigitalMap
from digicov.oracle import QUOTIENTS, EnumerationBounds, implication_scan
from digicov.repro import RESULTS

CONDITIONS = {
    "cond1": "condition (1): sheets over the fiber cover the preimage of N(b,1)",
    "cond2": "condition (2): sheets over distinct fiber points are disjoint",
    "cond3": "condition (3): each sheet restricts to the required isomorphism",
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(2)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def _load_map(path: str) -> DigitalMap:
    p = Path(path)
    try:
        data = json.loads(p.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise DomainError(f"cannot read map file {path}: {exc}") from None
    return DigitalMap.from_dict(data, base=p.parent)


def _bounds(args) -> EnumerationBounds:
    kw = {k: getattr(args, k) for k in ("max_points", "dim", "t", "box", "ceiling") if getattr(args, k) is not None}
    return EnumerationBounds(**kw)


def _add_bounds(sp):
    sp.add_argument("--max-points", type=int)
    sp.add_argument("--dim", type=int)
    sp.add_argument("--t", type=int)
    sp.add_argument("--box", type=int)
    sp.add_argument("--ceiling", type=int, help="overrides DIGICOV_CEILING")


def _print_report(report) -> None:
    print(f"{report.predicate}: {'holds' if report.holds else 'fails'}")
    for row in report.per_base:
        failed = [CONDITIONS[c] for c in ("cond1", "cond2", "cond3") if getattr(row, c) is False]
        if failed:
            print(f"  b={row.b}: " + "; ".join(failed))
    if report.witness is not None:
        print("witness: " + json.dumps(report.witness.to_dict(), sort_keys=True))


def cmd_check(args) -> int:
    predicate = args.predicate or args.predicate_pos
    path = args.map or args.map_pos
    if not predicate or not path:
        raise UsageError("check needs a predicate and a map file")
    if predicate not in PREDICATES:
        raise UsageError(f"unknown predicate {predicate!r}; choose from {', '.join(PREDICATES)}")
    p = _load_map(path)
    if args.subset_search:
        if predicate != "pseudo-original":
            raise UsageError("--subset-search applies to pseudo-original only")
        report = check_original_pseudocovering(p, subset_search=True)
    else:
        report = PREDICATES[predicate](p)
    if args.json:
        print(_dump(report.to_dict()))
    else:
        _print_report(report)
    return 0 if report.holds else 1


def cmd_classify(args) -> int:
    path = args.map or args.map_pos
    if not path:
        raise UsageError("classify needs a map file")
    c = classify(_load_map(path))
    if args.json:
        print(_dump(c.to_dict()))
    else:
        for name, ok in c.flags().items():
            print(f"{name:22s} {'yes' if ok else 'no'}")
    return 0


def cmd_gen(args) -> int:
    if args.kind == "scc":
        obj = scc_catalog(args.name or args.curve).to_dict()
    elif args.kind == "wrap":
        obj = wrap_map(scc_catalog(args.curve), args.window_end).to_dict()
    elif args.kind == "cover":
        obj = cyclic_cover(scc_catalog(args.big), scc_catalog(args.small or args.curve)).to_dict()
    else:
        obj = interval_image(args.start, args.end).to_dict()
    text = _dump(obj) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_repro(args) -> int:
    bounds = _bounds(args)
    claims = RESULTS[args.result](bounds)
    for c in claims:
        print(f"[{'ok' if c.ok else 'FAILED'}] {c.statement}" + (f"  ({c.detail})" if c.detail else ""))
    failed = [c for c in claims if not c.ok]
    if failed:
        print(f"{args.result}: {len(failed)} of {len(claims)} assertions failed; first: {failed[0].statement}")
        return 1
    print(f"{args.result}: all {len(claims)} assertions confirmed")
    return 0


def cmd_falsify(args) -> int:
    found = implication_scan(args.hypothesis, args.conclusion, _bounds(args), quotient=args.quotient)
    if not found:
        print(_dump({"hypothesis": args.hypothesis, "conclusion": args.conclusion, "counterexamples": []}))
        return 0
    print(_dump({
        "hypothesis": args.hypothesis,
        "conclusion": args.conclusion,
        "total": len(found),
        "counterexamples": [c.to_dict() for c in found[: args.limit]],
    }))
    return 1


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="digicov", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("check", help="run one predicate on a map file")
    sp.add_argument("predicate_pos", nargs="?", metavar="PREDICATE")
    sp.add_argument("map_pos", nargs="?", metavar="MAP")
    sp.add_argument("--predicate")
    sp.add_argument("--map")
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--subset-search", action="store_true")
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("classify", help="run every predicate on a map file")
    sp.add_argument("map_pos", nargs="?", metavar="MAP")
    sp.add_argument("--map")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("gen", help="write curve, window or map JSON")
    sp.add_argument("kind", choices=["scc", "wrap", "cover", "interval"])
    sp.add_argument("--name", choices=catalog_names())
    sp.add_argument("--curve", choices=catalog_names())
    sp.add_argument("--window-end", type=int)
    sp.add_argument("--big", choices=catalog_names())
    sp.add_argument("--small", choices=catalog_names())
    sp.add_argument("--start", type=int, default=0)
    sp.add_argument("--end", type=int)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("repro", help="reproduce a named result")
    sp.add_argument("result", choices=list(RESULTS))
    _add_bounds(sp)
    sp.set_defaults(func=cmd_repro)

    sp = sub.add_parser("falsify", help="search for counterexamples to an implication")
    sp.add_argument("hypothesis", choices=SCAN_PREDICATES)
    sp.add_argument("conclusion", choices=SCAN_PREDICATES)
    sp.add_argument("--quotient", choices=QUOTIENTS, default="graph")
    sp.add_argument("--limit", type=int, default=3, help="counterexamples to print")
    _add_bounds(sp)
    sp.set_defaults(func=cmd_falsify)
    return parser


def _validate_gen(args) -> None:
    if args.kind == "scc" and not (args.name or args.curve):
        raise UsageError("gen scc needs --name")
    if args.kind == "wrap" and not args.curve:
        raise UsageError("gen wrap needs --curve")
    if args.kind == "cover" and not (args.big and (args.small or args.curve)):
        raise UsageError("gen cover needs --big and --small")
    if args.kind == "interval" and args.end is None:
        raise UsageError("gen interval needs --end")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "gen":
            _validate_gen(args)
        return args.func(args)
    except (UsageError, DomainError, ValueError) as exc:
        print(f"digicov {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
