"""Command line: ``bifrob check|report|conv-inverse|fixtures``.

Exit codes: 0 success, 1 unreadable or malformed input, 2 the structure fails
to build as a biFrobenius algebra or some applicable check fails.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import __version__, fixtures
from .algcoalg import check_algebra, check_coalgebra
from .algebrafile import ParseError, from_structures, parse, render, to_structures
from .exactlinalg import FieldSpec
from .reportdoc import (build_document, check_exit_code, conv_inverse_document,
                        conv_inverse_text, to_json, to_text)

log = logging.getLogger("bifrob")


def _read_input(spec: str) -> bytes:
    path = Path(spec)
    if path.exists():
        return path.read_bytes()
    if spec in fixtures.REGISTRY:
        return emit_fixture(spec)
    raise ParseError(f"{spec}: no such file or fixture")


def emit_fixture(name: str, characteristic: int = 0) -> bytes:
    field = FieldSpec(characteristic)
    A, C, t, phi = fixtures.load(name, field)
    return render(from_structures(name, A, C, t, phi))


def cmd_check(args) -> int:
    raw = _read_input(args.input)
    doc = build_document(parse(raw), raw, args.field_override)
    code = check_exit_code(doc)
    if not args.quiet:
        if doc["build_error"]:
            print(f"build error: {doc['build_error']}", file=sys.stderr)
        failed = [c["id"] for c in doc["checks"] if c["status"] == "fail"]
        for cid in failed:
            print(f"failed: {cid}", file=sys.stderr)
        print("ok" if code == 0 else "FAILED")
    return code


def cmd_report(args) -> int:
    raw = _read_input(args.input)
    doc = build_document(parse(raw), raw, args.field_override)
    if not args.quiet:
        sys.stdout.write(to_json(doc) if args.format == "json" else to_text(doc))
    return 0


def cmd_conv_inverse(args) -> int:
    raw = _read_input(args.input)
    af = parse(raw)
    A, C, _, _ = to_structures(af, args.field_override)
    bad = check_algebra(A).failures + check_coalgebra(C).failures
    if bad:
        for c in bad:
            print(f"failed: {c.id}", file=sys.stderr)
        return 2
    doc = conv_inverse_document(af, args.field_override)
    if not args.quiet:
        if args.format == "json":
            sys.stdout.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")
        else:
            sys.stdout.write(conv_inverse_text(doc))
    return 0


def cmd_fixtures(args) -> int:
    if args.action == "list":
        for name, (desc, _) in fixtures.REGISTRY.items():
            print(f"{name:12s} {desc.notes}")
        return 0
    if args.name is None:
        raise ParseError("fixtures emit needs a fixture name")
    try:
        data = emit_fixture(args.name, args.char)
    except KeyError as err:
        raise ParseError(err.args[0]) from None
    if args.output:
        Path(args.output).write_bytes(data)
    else:
        sys.stdout.write(data.decode("utf-8"))
    return 0


def make_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("input", help="algebra JSON file, or a built-in fixture name")
    common.add_argument("--field-override", type=int, metavar="P",
                        help="reduce a characteristic-0 file modulo the prime P")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--quiet", action="store_true", help="print nothing; exit code only")

    p = argparse.ArgumentParser(prog="bifrob", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("check", parents=[common], help="exit 0 iff every check passes"
                   ).set_defaults(func=cmd_check)
    sub.add_parser("report", parents=[common], help="full verification report"
                   ).set_defaults(func=cmd_report)
    sub.add_parser("conv-inverse", parents=[common],
                   help="convolution inverse of the identity, or 'none'"
                   ).set_defaults(func=cmd_conv_inverse)
    fx = sub.add_parser("fixtures", help="list or emit built-in fixtures")
    fx.add_argument("action", choices=("list", "emit"))
    fx.add_argument("name", nargs="?")
    fx.add_argument("--char", type=int, default=0, help="characteristic of the emitted file")
    fx.add_argument("-o", "--output", help="write to this path instead of stdout")
    fx.set_defaults(func=cmd_fixtures)
    return p


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(name)s: %(message)s")
    args = make_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    except ValueError as err:
        # e.g. an invalid characteristic for fixture emission
        print(f"error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
