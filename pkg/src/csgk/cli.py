"""Command-line interface.

Exit status: 0 when everything passes, 1 when a check fails or a vector
mismatches, 2 on usage or configuration errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Sequence

from . import algebra, extensions, topology, words
from .config import load_config
from .elements import BicyclicNF, CanonC, Region
from .errors import (
    ConfigError,
    CsgkError,
    EmptyWord,
    InvalidCharacter,
    InvalidElement,
    VectorIOError,
    VectorParseError,
    WordTooLong,
)
from .report import encode
from .suites import SUITES, build_document, run_suites
from .vectors import load_vectors, replay_vectors, shipped_vectors

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
USAGE_ERRORS = (ConfigError, EmptyWord, InvalidCharacter, InvalidElement, VectorIOError, VectorParseError, WordTooLong)


def _emit(obj: Any, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(encode(obj), indent=2, ensure_ascii=False))
    elif isinstance(obj, dict):
        for key, value in obj.items():
            print(f"{key}: {encode(value)}")
    else:
        print(encode(obj))


def cmd_reduce(args) -> int:
    w = words.parse_word(args.word, max_length=args.max_length)
    if args.system == "bicyclic":
        x = words.to_normal_b(w)
        out = {"word": words.from_normal_b(x), "normal_form": str(x)}
    else:
        x = words.to_normal_c(w)
        out = {"word": words.from_normal_c(x), "normal_form": str(x)}
    _emit(out, args.format)
    return EXIT_OK


def cmd_mul(args) -> int:
    if args.system == "bicyclic":
        z = algebra.mul_b(BicyclicNF.parse(args.x), BicyclicNF.parse(args.y))
    else:
        z = algebra.mul_c(CanonC.parse(args.x), CanonC.parse(args.y))
    _emit({"product": str(z)}, args.format)
    return EXIT_OK


def cmd_star(args) -> int:
    if args.zero:
        z = extensions.zero_mul(extensions.parse_ext_zero(args.x), extensions.parse_ext_zero(args.y))
    else:
        z = extensions.star_mul(extensions.parse_ext(args.x), extensions.parse_ext(args.y))
    _emit({"product": extensions.format_ext(z)}, args.format)
    return EXIT_OK


def cmd_hom(args) -> int:
    _emit({"image": str(algebra.hom_h(CanonC.parse(args.x)))}, args.format)
    return EXIT_OK


def cmd_solve(args) -> int:
    shape = algebra.EquationShape.parse(args.shape)
    rhs = CanonC.parse(args.rhs)
    region = Region.parse(args.region)
    guard = region.grow(2)
    sols = algebra.solve_equation(shape, rhs, region)
    guard_sols = algebra.solve_equation(shape, rhs, guard)
    _emit(
        {
            "shape": str(shape),
            "rhs": str(rhs),
            "region": str(region),
            "solutions": sorted(str(x) for x in sols),
            "guard_region": str(guard),
            "guard_solutions": sorted(str(x) for x in guard_sols),
            "stable_under_growth": sols == guard_sols,
        },
        args.format,
    )
    return EXIT_OK


def cmd_green(args) -> int:
    x, y = CanonC.parse(args.x), CanonC.parse(args.y)
    if args.side == "simple":
        w = algebra.simple_witness(x, y, args.maxlen)
    else:
        w = algebra.green_witness(args.side, x, y, args.maxlen or 6)
    result = "not found within bound" if w is None else {"u": w.u, "v": w.v}
    _emit({"side": args.side, "witness": result}, args.format)
    return EXIT_OK


def cmd_nbhd(args) -> int:
    if args.topology == "tau-p":
        params = topology.TauPParams(args.p, args.alpha, args.lambda_max)
        pts = topology.nbhd_tau_p(CanonC.parse(args.x), params)
    elif args.topology == "ext":
        pts = topology.nbhd_ext(extensions.parse_ext(args.x), args.n, args.kcap)
    else:
        pts = topology.nbhd_zero(args.n, Region.parse(args.region))
    _emit({"points": sorted(extensions.format_ext(p) for p in pts)}, args.format)
    return EXIT_OK


def cmd_metric(args) -> int:
    d = topology.metric_tau_p(CanonC.parse(args.x), CanonC.parse(args.y), args.p)
    _emit({"distance": str(d.as_fraction()), "kind": d.kind, "s": d.s}, args.format)
    return EXIT_OK


def cmd_check(args) -> int:
    overrides = {
        "region": args.region,
        "bcap": args.bcap,
        "primes": args.primes if args.p is None else str(args.p),
        "alpha_max": args.alpha_max if args.alpha is None else args.alpha,
        "alpha_min": args.alpha,
        "lambda_factor": args.lambda_factor,
        "maxlen": args.maxlen,
        "format": args.format,
        "workers": args.workers,
    }
    cfg = load_config(args.config, **overrides)
    names = list(SUITES) if args.suite == "all" else [args.suite]
    reports = run_suites(names, cfg)
    doc = build_document(reports, cfg)
    if cfg.format == "json":
        print(json.dumps(doc, indent=2, ensure_ascii=False))
    else:
        for rep in reports:
            status = "PASS" if rep.ok else "FAIL"
            print(f"{status} {rep.check}: {rep.items_tested} items, {rep.failure_count} failures")
            for warning in rep.warnings:
                print(f"  warning: {warning}")
        for d in doc["paper_discrepancies"]:
            print(f"DISCREPANCY {d['id']}: stated {d['stated']}; computed {d['computed']}")
    return EXIT_OK if doc["ok"] else EXIT_FAIL


def cmd_replay(args) -> int:
    records = shipped_vectors() if args.file == "shipped" else load_vectors(args.file)
    report = replay_vectors(records)
    if args.format == "json":
        print(json.dumps(report.to_dict(), indent=2, ensure_ascii=False))
    else:
        print(f"{'PASS' if report.ok else 'FAIL'} replay: {report.items_tested} records, {report.failure_count} mismatches")
        for f in report.failures:
            print(f"  line {f['line']} {f['op']}: expected {f['expected']!r}, got {f['got']!r}")
    return EXIT_OK if report.ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="csgk", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default=None)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("reduce", parents=[common], help="normal form of a word")
    p.add_argument("word")
    p.add_argument("--system", choices=("c", "bicyclic"), default="c")
    p.add_argument("--max-length", type=int, default=words.DEFAULT_MAX_LENGTH)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("mul", parents=[common], help="product of two normal forms")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--system", choices=("c", "bicyclic"), default="c")
    p.set_defaults(func=cmd_mul)

    p = sub.add_parser("star", parents=[common], help="product in C ⊔ B(a,b) (or C ∪ {0} with --zero)")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--zero", action="store_true")
    p.set_defaults(func=cmd_star)

    p = sub.add_parser("hom", parents=[common], help="image under C -> B(a,b)")
    p.add_argument("--x", required=True)
    p.set_defaults(func=cmd_hom)

    p = sub.add_parser("solve", parents=[common], help="brute-force equation solver")
    p.add_argument("--shape", required=True, help="axb, xb, ax, lx:k,l,m or xr:k,l,m")
    p.add_argument("--rhs", required=True)
    p.add_argument("--region", default="4,4,4")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("green", parents=[common], help="bounded Green's-relation or simplicity witness")
    p.add_argument("--side", choices=("R", "L", "simple"), required=True)
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--maxlen", type=int, default=None)
    p.set_defaults(func=cmd_green)

    p = sub.add_parser("nbhd", parents=[common], help="truncated basic neighbourhood")
    p.add_argument("--topology", choices=("tau-p", "ext", "zero"), required=True)
    p.add_argument("--x")
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--alpha", type=int, default=1)
    p.add_argument("--lambda-max", type=int, default=4)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--kcap", type=int, default=6)
    p.add_argument("--region", default="4,4,4")
    p.set_defaults(func=cmd_nbhd)

    p = sub.add_parser("metric", parents=[common], help="distance in the tau_p metric")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--p", type=int, required=True)
    p.set_defaults(func=cmd_metric)

    p = sub.add_parser("check", parents=[common], help="run a check suite ('all' for every suite)")
    p.add_argument("suite", choices=(*SUITES, "all"))
    p.add_argument("--config", help="JSON file overriding the defaults")
    p.add_argument("--region")
    p.add_argument("--bcap", type=int)
    p.add_argument("--primes", help="comma-separated primes")
    p.add_argument("--p", type=int, help="single prime (tau-p)")
    p.add_argument("--alpha", type=int, help="single alpha (tau-p)")
    p.add_argument("--alpha-max", type=int)
    p.add_argument("--lambda-factor", type=int)
    p.add_argument("--maxlen", type=int)
    p.add_argument("--workers", type=int)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("replay", parents=[common], help="replay a JSONL vector file ('shipped' for the built-in corpus)")
    p.add_argument("file")
    p.set_defaults(func=cmd_replay)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command != "check" and args.format is None:
        args.format = "text"
    try:
        return args.func(args)
    except USAGE_ERRORS as exc:
        print(f"csgk: {exc.code}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CsgkError as exc:
        print(f"csgk: {exc.code}: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
