"""``pmcoh`` command line.

Exit codes: 0 success, 1 input or validation error, 2 a verification check
failed (``verify`` only).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence, TextIO

from .homology import cohomology_of
from .laurent import (
    LaurentPoly,
    format_poly,
    generalized_bracket,
    four_color_polynomial,
    parse_poly,
    tait_polynomial,
    two_factor_polynomial,
)
from .oracles import (
    AbstractGraph,
    SizeGuardError,
    count_tait_colorings,
    enumerate_perfect_matchings,
    is_even_matching,
    two_factors_through,
)
from .planar_map import FAMILIES, DiagramError, FlipSpec, PlanarDiagram, flip, format_diagram, generate_family, parse_diagram
from .states import hypercube
from .verify import SUITES, run_suite

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_VERIFY = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse exits with 2 by default; input errors are 1 here
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _add_input(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--family", choices=FAMILIES, help="generate a family member")
    src.add_argument("--input", metavar="FILE", help="graph file ('-' for stdin)")
    p.add_argument("--m", type=int, default=1, help="family size parameter (default 1)")
    p.add_argument("--format", choices=("text", "tsv", "json"), default="text")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pmcoh", description="Invariants of planar trivalent graphs with perfect matchings.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("bracket", help="2-factor, four color or generalized bracket polynomial")
    _add_input(p)
    kind = p.add_mutually_exclusive_group()
    kind.add_argument("--two-factor", action="store_const", dest="kind", const="two-factor")
    kind.add_argument("--four-color", action="store_const", dest="kind", const="four-color")
    kind.add_argument("--general", nargs=3, metavar=("A", "B", "C"), help="bracket coefficients as polynomials")
    p.add_argument("--normalize", action="store_true", help="divide by the circle value C")

    p = sub.add_parser("cohomology", help="table of dim H^{i,j}")
    _add_input(p)

    p = sub.add_parser("tait", help="Tait polynomial (sum over all perfect matchings)")
    _add_input(p)
    p.add_argument("--per-matching", action="store_true", help="also list each matching's polynomial")

    p = sub.add_parser("hypercube", help="dump states, circle counts and edge kinds")
    _add_input(p)

    p = sub.add_parser("flip", help="apply a flip and print the resulting graph file")
    _add_input(p)
    p.add_argument("--inside", required=True, help="comma-separated vertex names inside the flipping disk")

    p = sub.add_parser("oracle", help="brute-force counts")
    p.add_argument("what", choices=("matchings", "two-factors", "tait-colorings", "even"))
    _add_input(p)

    p = sub.add_parser("verify", help="run verification suites")
    _add_input(p)
    p.add_argument("--suite", choices=SUITES, default="all")
    return parser


def _load(args) -> PlanarDiagram:
    if args.family:
        return generate_family(args.family, args.m)
    if args.input == "-":
        return parse_diagram(sys.stdin.read())
    with open(args.input, encoding="utf-8") as fh:
        return parse_diagram(fh.read())


def _poly_out(p: LaurentPoly, fmt: str) -> str:
    if fmt == "json":
        return json.dumps({"schemaVersion": 1, "polynomial": p.to_pairs()}) + "\n"
    if fmt == "tsv":
        return "exponent\tcoefficient\n" + "".join(f"{e}\t{c}\n" for e, c in p.terms)
    return format_poly(p) + "\n"


def _edge_list(d: PlanarDiagram, edges) -> list[str]:
    return [d.edge_names[e] for e in sorted(edges)]


def _cmd_bracket(d: PlanarDiagram, args, out: TextIO) -> int:
    if args.general:
        a, b, c = (parse_poly(x) for x in args.general)
    elif args.kind == "four-color":
        a, b, c = 1, -LaurentPoly.z(), LaurentPoly({-1: 1, 0: 1, 1: 1})
    else:
        a, b, c = 1, -LaurentPoly.z(), LaurentPoly({-1: 1, 1: 1})
    if args.normalize or args.general:
        p = generalized_bracket(d, a, b, c, normalize=args.normalize)
    elif args.kind == "four-color":
        p = four_color_polynomial(d)
    else:
        p = two_factor_polynomial(d)
    out.write(_poly_out(p, args.format))
    return EXIT_OK


def _cmd_cohomology(d: PlanarDiagram, args, out: TextIO) -> int:
    t = cohomology_of(d)
    out.write({"text": t.to_text, "tsv": t.to_tsv, "json": t.to_json}[args.format]())
    return EXIT_OK


def _cmd_tait(d: PlanarDiagram, args, out: TextIO) -> int:
    total, parts = tait_polynomial(d, per_matching=True)
    if args.format == "json":
        obj = {"schemaVersion": 1, "polynomial": total.to_pairs()}
        if args.per_matching:
            obj["perMatching"] = [
                {"matching": _edge_list(d, m), "polynomial": p.to_pairs()} for m, p in parts
            ]
        out.write(json.dumps(obj) + "\n")
    elif args.format == "tsv":
        out.write(_poly_out(total, "tsv"))
        if args.per_matching:
            out.write("matching\tpolynomial\n")
            for m, p in parts:
                out.write(f"{' '.join(_edge_list(d, m))}\t{format_poly(p)}\n")
    else:
        out.write(format_poly(total) + "\n")
        if args.per_matching:
            for m, p in parts:
                out.write(f"  {{{', '.join(_edge_list(d, m))}}}: {format_poly(p)}\n")
    return EXIT_OK


def _cmd_hypercube(d: PlanarDiagram, args, out: TextIO) -> int:
    cube = hypercube(d)
    order = _edge_list(d, d.matching)
    if args.format == "json":
        obj = {
            "schemaVersion": 1,
            "matchingOrder": order,
            "states": [{"alpha": s.bits(), "k": s.k} for s in cube.states],
            "edges": [
                {"from": cube.states[e.source].bits(), "to": cube.states[e.target].bits(), "kind": e.kind}
                for e in cube.edges
            ],
        }
        out.write(json.dumps(obj) + "\n")
        return EXIT_OK
    if args.format == "tsv":
        out.write("alpha\tk\n" + "".join(f"{s.bits()}\t{s.k}\n" for s in cube.states))
        out.write("from\tto\tkind\n")
        out.write("".join(f"{cube.states[e.source].bits()}\t{cube.states[e.target].bits()}\t{e.kind}\n" for e in cube.edges))
        return EXIT_OK
    out.write(f"matching order: {' '.join(order)}\n")
    for s in cube.states:
        out.write(f"state {s.bits() or '-'}: k = {s.k}\n")
    for e in cube.edges:
        out.write(f"{cube.states[e.source].bits()} -> {cube.states[e.target].bits()}: {e.kind}\n")
    return EXIT_OK


def _cmd_flip(d: PlanarDiagram, args, out: TextIO) -> int:
    names = [n for n in args.inside.split(",") if n]
    result = flip(d, FlipSpec.from_names(d, names))
    out.write(format_diagram(result))
    return EXIT_OK


def _cmd_oracle(d: PlanarDiagram, args, out: TextIO) -> int:
    g = AbstractGraph.from_diagram(d)
    if args.what == "matchings":
        items = [_edge_list(d, m) for m in enumerate_perfect_matchings(g)]
        value = {"count": len(items), "matchings": items}
    elif args.what == "two-factors":
        items = [_edge_list(d, f) for f in two_factors_through(g, d.matching)]
        value = {"count": len(items), "twoFactors": items}
    elif args.what == "tait-colorings":
        value = {"count": count_tait_colorings(g)}
    else:
        value = {"even": is_even_matching(g, d.matching)}
    if args.format == "json":
        out.write(json.dumps({"schemaVersion": 1, **value}) + "\n")
    elif args.format == "tsv":
        out.write("".join(f"{k}\t{json.dumps(v)}\n" for k, v in value.items()))
    else:
        for k, v in value.items():
            if isinstance(v, list):
                for row in v:
                    out.write("  " + " ".join(row) + "\n")
            else:
                out.write(f"{k}: {str(v).lower() if isinstance(v, bool) else v}\n")
    return EXIT_OK


def _cmd_verify(d: PlanarDiagram, args, out: TextIO) -> int:
    results = run_suite(args.suite, d)
    failed = [r for r in results if not r.ok and not r.informational]
    if args.format == "json":
        rows = [
            {"suite": r.suite, "check": r.name, "ok": r.ok, "informational": r.informational, "detail": r.detail}
            for r in results
        ]
        out.write(json.dumps({"schemaVersion": 1, "results": rows, "failures": len(failed)}) + "\n")
    elif args.format == "tsv":
        out.write("suite\tcheck\tstatus\tdetail\n")
        for r in results:
            status = ("ok" if r.ok else "differs") if r.informational else ("pass" if r.ok else "FAIL")
            out.write(f"{r.suite}\t{r.name}\t{status}\t{r.detail}\n")
    else:
        for r in results:
            if r.informational:
                status = "INFO " + ("holds" if r.ok else "differs")
            else:
                status = "PASS" if r.ok else "FAIL"
            extra = f"  ({r.detail})" if r.detail and not r.ok else ""
            out.write(f"{status:12} [{r.suite}] {r.name}{extra}\n")
        out.write(f"{len(results) - len(failed)} of {len(results)} checks passed\n")
    return EXIT_VERIFY if failed else EXIT_OK


_COMMANDS = {
    "bracket": _cmd_bracket,
    "cohomology": _cmd_cohomology,
    "tait": _cmd_tait,
    "hypercube": _cmd_hypercube,
    "flip": _cmd_flip,
    "oracle": _cmd_oracle,
    "verify": _cmd_verify,
}


def _protect_coefficients(argv: list[str]) -> list[str]:
    """Keep ``--general`` coefficients such as ``-z`` from being read as flags."""
    out = list(argv)
    for idx, tok in enumerate(argv):
        if tok == "--general":
            for k in range(idx + 1, min(idx + 4, len(out))):
                if out[k].startswith("-"):
                    out[k] = " " + out[k]
    return out


def run(argv: Optional[Sequence[str]] = None, out: Optional[TextIO] = None, err: Optional[TextIO] = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(_protect_coefficients(list(sys.argv[1:] if argv is None else argv)))
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        d = _load(args)
        return _COMMANDS[args.command](d, args, out)
    except (DiagramError, SizeGuardError, ValueError, OSError) as exc:
        err.write(f"pmcoh: error: {exc}\n")
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())
