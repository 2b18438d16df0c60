"""Command-line interface.

Exit codes: 0 consistent / valid, 1 inconsistency or invalid certificate,
2 budget exhausted, 3 bad input.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .certificate import CertificateFormatError, dumps, load_certificate, verify_certificate
from .complex import read_sc, validate
from .errors import (BadSpec, BudgetExceeded, ComplexError, PreconditionViolated,
                     SearchExhausted)
from .homology import homology_summary
from .manifolds import generate

EXIT_OK, EXIT_INCONSISTENT, EXIT_BUDGET, EXIT_INPUT = 0, 1, 2, 3


class InputError(Exception):
    pass


def _load(args):
    if (args.input is None) == (args.gen is None):
        raise InputError("give exactly one of an input .sc file or --gen NAME[:PARAM]")
    try:
        if args.gen is not None:
            return generate(args.gen)
        return read_sc(args.input)
    except (BadSpec, ComplexError, OSError) as exc:
        raise InputError(str(exc)) from None


def _emit(args, doc: dict, lines: list[str]) -> None:
    text = dumps(doc)
    if args.out:
        Path(args.out).write_text(text)
    if args.json:
        sys.stdout.write(text)
    else:
        print("\n".join(lines))


def cmd_h1(args) -> int:
    K = _load(args)
    h = homology_summary(K)
    doc = {"complex_hash": K.digest(), **h.to_json()}
    _emit(args, doc, [f"betti: {h.betti}", f"h1_torsion: {h.h1_torsion}",
                      f"h1_trivial: {str(h.h1_trivial).lower()}"])
    return EXIT_OK


def cmd_verify(args) -> int:
    from .domains import theorem_check

    K = _load(args)
    rep = validate(K)
    if not (rep.is_pseudomanifold and rep.is_connected and rep.is_closed):
        raise InputError("verify needs a connected closed pseudomanifold")
    budget = args.max if args.max is not None else len(K.facets)
    try:
        report = theorem_check(K, budget, max_candidates=args.max_candidates)
        code = EXIT_OK if report.consistent else EXIT_INCONSISTENT
    except BudgetExceeded as exc:
        report, code = exc.partial, EXIT_BUDGET
    doc = report.to_json()
    if code == EXIT_BUDGET:
        doc["budget_exceeded"] = True
    lines = [
        f"betti: {report.betti}",
        f"h1_trivial: {str(report.h1_trivial).lower()}",
        f"candidates_tested: {report.candidates_tested}"
        + (" (exhaustive)" if report.exhaustive else f" (max {report.max_facets} facets)"),
        f"cutting domains: {report.cutting_domains}",
        f"non-cutting witnesses: {len(report.non_cutting_witnesses)}",
    ]
    lines += [f"  witness F={list(w.domain.facets)}" for w in report.non_cutting_witnesses]
    if code == EXIT_BUDGET:
        lines.append("budget exceeded")
    lines.append(f"consistent: {str(report.consistent).lower()}")
    _emit(args, doc, lines)
    if code == EXIT_INCONSISTENT:
        print("INCONSISTENT: non-cutting witness on a complex with trivial H^1", file=sys.stderr)
    return code


def cmd_witness(args) -> int:
    from .witness import construct_witness

    K = _load(args)
    if homology_summary(K).h1_trivial:
        raise InputError("first Betti number is 0: no witness exists")
    try:
        cert = construct_witness(K, full_pipeline=not args.no_circle_map,
                                 max_facets=args.max, retries=args.retries)
    except SearchExhausted as exc:
        print(json.dumps(exc.log, sort_keys=True), file=sys.stderr)
        return EXIT_BUDGET
    doc = cert.to_json()
    lines = [
        f"working complex: Sd^{cert.subdivisions}, {len(cert.working_complex.facets)} facets",
        f"domain facets: {len(cert.domain.facets)}",
        f"boundary components: {cert.cut.boundary.component_count}",
        f"cuts: {str(cert.cut.cuts).lower()}",
    ]
    if cert.pairing_value is not None:
        lines.append(f"pairing: {cert.pairing_value}")
    _emit(args, doc, lines)
    return EXIT_OK


def cmd_check_certificate(args) -> int:
    try:
        doc = load_certificate(Path(args.path).read_text())
    except (OSError, UnicodeDecodeError, CertificateFormatError) as exc:
        raise InputError(str(exc)) from None
    ok = verify_certificate(doc)
    print("certificate valid" if ok else "certificate INVALID")
    return EXIT_OK if ok else EXIT_INCONSISTENT


def cmd_generate(args) -> int:
    try:
        K = generate(args.gen)
    except BadSpec as exc:
        raise InputError(str(exc)) from None
    if args.out:
        Path(args.out).write_text(K.to_sc())
    else:
        sys.stdout.write(K.to_sc())
    return EXIT_OK


def _retries(text: str) -> int:
    k = int(text)
    if not 0 <= k <= 8:
        raise argparse.ArgumentTypeError("retries must be between 0 and 8")
    return k


def _positive(text: str) -> int:
    k = int(text)
    if k < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return k


class _Parser(argparse.ArgumentParser):
    # usage errors are input errors, not budget exhaustion
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cuttop", description="Cutting sets and first cohomology of "
                                                "simplicial manifolds.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add_input(p):
        p.add_argument("input", nargs="?", help=".sc file")
        p.add_argument("--gen", help="built-in manifold, e.g. torus2, sphere:2, genus:2")
        p.add_argument("--json", action="store_true", help="print JSON")
        p.add_argument("--out", help="also write JSON to this path")

    p = sub.add_parser("h1", help="Betti numbers, torsion and the H^1 verdict")
    add_input(p)
    p.set_defaults(func=cmd_h1)

    p = sub.add_parser("verify", help="test candidate domains against the theorem")
    add_input(p)
    p.add_argument("--max", type=_positive, help="largest facet count of a domain "
                                                 "(default: all facets, exhaustive)")
    p.add_argument("--max-candidates", type=_positive, help="stop after this many domains")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("witness", help="certified non-cutting domain and winding cocycle")
    add_input(p)
    p.add_argument("--max", type=_positive, help="facet budget for the fallback search")
    p.add_argument("--retries", type=_retries, default=8, help="extra subdivisions allowed")
    p.add_argument("--no-circle-map", action="store_true",
                   help="stop after the domain is certified")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("check-certificate", help="re-verify a certificate")
    p.add_argument("path")
    p.set_defaults(func=cmd_check_certificate)

    p = sub.add_parser("generate", help="write a built-in triangulation as .sc")
    p.add_argument("--gen", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_generate)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, PreconditionViolated) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
