"""Command-line interface.

Subcommands::

    soritica numbers eval "<expr>" [--oracle] [--seed S]
    soritica tables
    soritica laws --seed S --n N
    soritica sorites run <config.json> [--format text|json] [-o FILE]

Exit codes: 0 success, 1 property or oracle failure, 2 usage/config error.
"""

from __future__ import annotations

import argparse
import random
import sys

from . import __version__
from .laws import run_law_suite
from .neutrix import classify, parse_external, regular_inverse
from .sampling import mutual_membership_check
from .semantics import kleene_tables
from .series import ParseError
from .sorites import ConfigError, load_scenario, run_scenario


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="soritica",
        description="External-number calculator and Sorites workbench",
    )
    parser.add_argument(
        "--version", action="version", version=f"soritica {__version__}"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    numbers = sub.add_parser(
        "numbers", help="external-number expression calculator"
    )
    numbers_sub = numbers.add_subparsers(dest="numbers_command", required=True)
    numbers_eval = numbers_sub.add_parser(
        "eval", help="evaluate an expression"
    )
    numbers_eval.add_argument("expr")
    numbers_eval.add_argument(
        "--oracle",
        action="store_true",
        help="re-check the result with the membership-sampling oracle",
    )
    numbers_eval.add_argument("--seed", type=int, default=0)

    sub.add_parser("tables", help="print the strong three-valued truth tables")

    laws = sub.add_parser("laws", help="run the randomized algebraic law suite")
    laws.add_argument("--seed", type=int, default=0)
    laws.add_argument("--n", type=int, default=100, help="cases per law")

    sorites = sub.add_parser("sorites", help="run a soritical scenario")
    sorites_sub = sorites.add_subparsers(dest="sorites_command", required=True)
    sorites_run = sorites_sub.add_parser("run", help="run a scenario config")
    sorites_run.add_argument("config")
    sorites_run.add_argument(
        "--format", choices=("text", "json"), default="text"
    )
    sorites_run.add_argument("-o", "--output", default=None)
    return parser


def _cmd_numbers_eval(args) -> int:
    try:
        value = parse_external(args.expr)
    except ParseError as exc:
        print(f"syntax error: {exc}", file=sys.stderr)
        return 2
    print(value)
    label = classify(value).value
    if label == "NeutrixOnly":
        label = f"NeutrixOnly({value.neutrix.kind.name.title()})"
    print(label)
    if args.oracle:
        rng = random.Random(args.seed)
        reparsed = parse_external(str(value))
        ok = value == reparsed and mutual_membership_check(
            value, reparsed, rng
        )
        inverse = regular_inverse(value)
        if inverse is not None:
            ok = ok and mutual_membership_check(
                value * inverse * value, value, rng
            )
        print(f"oracle: {'ok' if ok else 'MISMATCH'} (seed {args.seed})")
        if not ok:
            return 1
    return 0


def _cmd_laws(args) -> int:
    if args.n < 1:
        print("laws: --n must be >= 1", file=sys.stderr)
        return 2
    print(f"soritica {__version__} law suite (seed {args.seed}, n {args.n})")
    results = run_law_suite(args.seed, args.n)
    failed = False
    for result in results:
        if result.passed:
            print(f"PASS {result.name} ({result.cases} cases)")
        else:
            failed = True
            print(f"FAIL {result.name}: {result.counterexample}")
    return 1 if failed else 0


def _cmd_sorites_run(args) -> int:
    try:
        scenario = load_scenario(args.config)
    except ConfigError as exc:
        print(f"config error at {exc.pointer or '/'}: {exc.message}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"cannot read config: {exc}", file=sys.stderr)
        return 2
    report = run_scenario(scenario)
    rendered = (
        report.to_json() if args.format == "json" else report.to_text()
    )
    if args.output:
        with open(args.output, "w", encoding="utf-8") as handle:
            handle.write(rendered)
    else:
        sys.stdout.write(rendered)
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command == "numbers":
        return _cmd_numbers_eval(args)
    if args.command == "tables":
        sys.stdout.write(kleene_tables())
        return 0
    if args.command == "laws":
        return _cmd_laws(args)
    if args.command == "sorites":
        return _cmd_sorites_run(args)
    parser.error(f"unknown command {args.command!r}")
    return 2


if __name__ == "__main__":
    sys.exit(main())
