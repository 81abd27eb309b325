"""Command-line front end.

Subcommands:

    eval "<query>"                 evaluate one query
    compare "<query>" "<query>"    compare two query values exactly
    suite [--config FILE] [--json] run the verification suites
    witness --prop {4.1|4.2} --eps P/Q   point-mass overflow witness
    stabilizer --grid SPEC         rotation stabilizer of a finite grid

All numeric input and output is exact rationals "p/q"; no floating point
appears anywhere in the interface.  SPINNERLAB_SEED overrides the
configured suite seed.  Exit codes: 0 success, 1 failure or evaluation
error, 2 unreadable configuration.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from fractions import Fraction

from .errors import DomainError, ParseError, QueryTypeError
from .lottery import archimedean_regularity_witness
from .query import evaluate, evaluate_value, parse_query, _compare_values
from .spinner import FiniteGrid, SuiteConfig, finite_grid_stabilizer
from . import suites

_USER_ERRORS = (ParseError, QueryTypeError, DomainError)


def _load_config(path: "str | None") -> SuiteConfig:
    if path is None:
        config = SuiteConfig()
    else:
        config = SuiteConfig.from_file(path)
    seed = os.environ.get("SPINNERLAB_SEED")
    if seed is not None:
        try:
            config.seed = int(seed)
        except ValueError:
            raise DomainError(f"SPINNERLAB_SEED must be an integer, "
                              f"got {seed!r}") from None
    return config


_FRACTION_RE = re.compile(r"-?\d+(/[1-9]\d*)?$")


def _parse_fraction(text: str) -> Fraction:
    text = text.strip()
    if not _FRACTION_RE.fullmatch(text):
        raise DomainError(f"expected an exact rational p/q, got {text!r}")
    return Fraction(text)


def _cmd_eval(args) -> int:
    result = evaluate(parse_query(args.query))
    for line in result.lines():
        print(line)
    return 0


def _cmd_compare(args) -> int:
    a = evaluate_value(parse_query(args.left))
    b = evaluate_value(parse_query(args.right))
    ordering, ratio, difference = _compare_values(a, b)
    print(f"ordering: {ordering}")
    if ratio is not None:
        print(f"ratio: {ratio}")
    print(f"difference: {difference}")
    return 0


def _cmd_suite(args) -> int:
    try:
        config = _load_config(args.config)
    except OSError as exc:
        print(f"error: cannot read config: {exc}", file=sys.stderr)
        return 2
    results = suites.run_all(config, corrupt=args.corrupt_oracle)
    if args.json:
        for r in results:
            print(json.dumps(r))
    else:
        for r in results:
            mark = "ok  " if r["verdict"] != "fail" else "FAIL"
            print(f"{mark} {r['suite']:40s} verdict={r['verdict']} "
                  f"cases={r['cases']}")
            for c in r["counterexamples"][:3]:
                print(f"     counterexample: {c}")
    ok = suites.all_passed(results)
    if not args.json:
        print("all suites passed" if ok else "suite failures detected")
    return 0 if ok else 1


def _cmd_witness(args) -> int:
    mode = "uniform_points" if args.prop == "4.1" else "rational_orbit"
    witness = archimedean_regularity_witness(_parse_fraction(args.eps), mode)
    print(json.dumps(witness.to_dict()))
    return 0


def _parse_grid(spec: str) -> FiniteGrid:
    spec = spec.strip()
    if spec.startswith("uniform:"):
        try:
            return FiniteGrid.uniform(int(spec.split(":", 1)[1]))
        except ValueError:
            raise DomainError(f"bad uniform grid spec {spec!r}") from None
    points = tuple(_parse_fraction(part)
                   for part in spec.split(",") if part.strip())
    if not points:
        raise DomainError("empty grid specification")
    return FiniteGrid(points)


def _cmd_stabilizer(args) -> int:
    result = finite_grid_stabilizer(_parse_grid(args.grid))
    print(json.dumps(result.to_dict()))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spinnerlab",
        description="Exact models of a fair spinner: interval-length, "
                    "hyperfinite grid, cylinder, coin-flip and lottery "
                    "probabilities, with verification suites.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate a query")
    p.add_argument("query")
    p.set_defaults(fn=_cmd_eval)

    p = sub.add_parser("compare", help="compare two query values")
    p.add_argument("left")
    p.add_argument("right")
    p.set_defaults(fn=_cmd_compare)

    p = sub.add_parser("suite", help="run the verification suites")
    p.add_argument("--config", default=None, metavar="FILE")
    p.add_argument("--json", action="store_true",
                   help="one JSON object per suite")
    p.add_argument("--corrupt-oracle", action="store_true",
                   help="test hook: skew one reference measure to force a "
                        "failure")
    p.set_defaults(fn=_cmd_suite)

    p = sub.add_parser("witness",
                       help="point-mass overflow witness for a claimed "
                            "uniform real point mass")
    p.add_argument("--prop", choices=("4.1", "4.2"), required=True,
                   help="4.1: equal point masses; 4.2: rational-orbit form")
    p.add_argument("--eps", required=True, metavar="P/Q")
    p.set_defaults(fn=_cmd_witness)

    p = sub.add_parser("stabilizer",
                       help="rotation stabilizer of a finite grid")
    p.add_argument("--grid", required=True,
                   help="comma-separated rationals, or uniform:N")
    p.set_defaults(fn=_cmd_stabilizer)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except _USER_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
