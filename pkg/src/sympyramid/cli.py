"""Command-line entry point.

Exit codes: 0 on success, 1 when the algorithm fails or validation finds a
violation, 2 on unreadable or invalid input.
"""
from __future__ import annotations

import argparse
import logging
import sys

from .engine import default_max_iter, run_caps, run_capso
from .errors import ConstructionError, DataError, UsageError
from .io import emit_dot, emit_pyramid, parse_pyramid, parse_table, read_text
from .validation import check_pyramid

EXIT_OK, EXIT_FAILED, EXIT_INPUT = 0, 1, 2


def _order(text: str) -> list:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"order must be comma-separated row ids, got {text!r}") from None


def _alpha(text: str) -> float:
    value = float(text)
    if not 0.0 <= value <= 1.0:
        raise argparse.ArgumentTypeError(f"alpha must lie in [0, 1], got {value}")
    return value


def _write(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def parse_args(argv=None):
    parser = argparse.ArgumentParser(
        prog="sympyramid",
        description="Build symbolic pyramids (CAPS / CAPSO) from symbolic data tables.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="log every merge decision")
    sub = parser.add_subparsers(dest="command", required=True)

    build = sub.add_parser("build", help="build a pyramid from a table document")
    build.add_argument("--input", required=True, help="table document (JSON), '-' for stdin")
    build.add_argument("--output", required=True, help="pyramid document path, '-' for stdout")
    build.add_argument("--order", type=_order,
                       help="comma-separated a priori order of row ids; selects CAPSO")
    build.add_argument("--max-iter", type=int, help="iteration budget (default N(N-1)/2 + N)")
    build.add_argument("--alpha", type=_alpha, help="also report modal extents at this level")
    build.add_argument("--dot", help="write Graphviz source here")
    build.add_argument("--validate", action="store_true",
                       help="check the pyramid axioms and completeness; exit 1 on violations")

    check = sub.add_parser("validate", help="validate an existing pyramid document against its table")
    check.add_argument("--input", required=True, help="table document (JSON)")
    check.add_argument("--pyramid", required=True, help="pyramid document (JSON)")
    check.add_argument("--json", action="store_true", help="print the report as JSON")
    return parser.parse_args(argv)


def _build(args) -> int:
    table = parse_table(read_text(args.input))
    max_iter = args.max_iter if args.max_iter is not None else default_max_iter(table.n)
    if args.order is not None:
        pyramid = run_capso(table, args.order, max_iter)
    else:
        pyramid = run_caps(table, max_iter)
    _write(args.output, emit_pyramid(pyramid, table, args.alpha))
    if args.dot:
        _write(args.dot, emit_dot(pyramid))
    print(f"{pyramid.algorithm}: {pyramid.ng} nodes over {pyramid.n} rows, "
          f"order {','.join(map(str, pyramid.final_order))}", file=sys.stderr)
    if args.validate:
        report = check_pyramid(pyramid, table)
        sys.stderr.write(report.format())
        if not report.ok:
            return EXIT_FAILED
    return EXIT_OK


def _validate(args) -> int:
    table = parse_table(read_text(args.input))
    pyramid = parse_pyramid(read_text(args.pyramid))
    report = check_pyramid(pyramid, table)
    sys.stdout.write(report.to_json() if args.json else report.format())
    return EXIT_OK if report.ok else EXIT_FAILED


def main(argv=None) -> int:
    args = parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.command == "build":
            return _build(args)
        return _validate(args)
    except (DataError, UsageError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ConstructionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
