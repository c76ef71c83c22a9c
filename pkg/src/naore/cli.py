"""Command-line front end: run, check, examples.

Exit codes: 0 on success (all verdict outcomes, including fails-with-witness,
are successes), 1 on task execution errors, 2 on spec-file errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .errors import NaoreError, SpecFileError
from .families import EXAMPLE_SPECS, example_spec_text
from .report import render_structured, render_text, run
from .rings import CapProfile
from .specfile import parse_spec


def _parse_caps(text: str) -> CapProfile:
    values = {}
    for piece in text.split(","):
        key, _, value = piece.partition("=")
        key = key.strip()
        if key not in ("X", "Y", "rounds") or not value.strip().isdigit():
            raise argparse.ArgumentTypeError("caps must look like X=6,Y=6,rounds=8")
        values[key] = int(value)
    if set(values) != {"X", "Y", "rounds"}:
        raise argparse.ArgumentTypeError("caps must name X, Y, and rounds")
    return CapProfile(values["X"], values["Y"], values["rounds"])


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="naore", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    run_parser = sub.add_parser("run", help="run the task list of a spec file")
    run_parser.add_argument("spec", help="path to a ring-spec file")
    run_parser.add_argument("--format", choices=("text", "structured"), default="text")
    run_parser.add_argument("--caps", type=_parse_caps, default=None, help="override, e.g. X=6,Y=6,rounds=8")
    run_parser.add_argument("--seed", type=int, default=None, help="seed for the randomized axiom suite")

    check_parser = sub.add_parser("check", help="parse and validate a spec file")
    check_parser.add_argument("spec", help="path to a ring-spec file")

    examples_parser = sub.add_parser("examples", help="list the shipped example specs")
    examples_parser.add_argument("--dump", metavar="NAME", default=None, help="print one shipped spec")

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)

    if args.command == "examples":
        if args.dump is not None:
            if args.dump not in EXAMPLE_SPECS:
                print(f"unknown example: {args.dump}", file=sys.stderr)
                return 2
            sys.stdout.write(example_spec_text(args.dump))
            return 0
        for name, description in EXAMPLE_SPECS.items():
            print(f"{name:24s} {description}")
        return 0

    path = Path(args.spec)
    try:
        text = path.read_text()
    except OSError as exc:
        print(f"cannot read {path}: {exc}", file=sys.stderr)
        return 2
    try:
        spec = parse_spec(text)
    except SpecFileError as exc:
        print(f"{path}: {exc}", file=sys.stderr)
        return 2

    if args.command == "check":
        print(f"{path}: ok ({len(spec.tasks)} tasks)")
        return 0

    try:
        report = run(spec, caps_override=args.caps, seed=args.seed)
    except NaoreError as exc:
        print(f"{path}: task error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"{path}: task error: {exc}", file=sys.stderr)
        return 1

    if args.format == "structured":
        sys.stdout.write(render_structured(report))
    else:
        sys.stdout.write(render_text(report))
    return 0


if __name__ == "__main__":
    sys.exit(main())
