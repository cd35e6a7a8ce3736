"""Command-line entry point: ``finprod <subcommand> ...``.

Exit codes: 0 success or equivalent, 1 not equivalent, 2 input error,
3 no events in survival data, 4 commutation hypothesis failed,
5 an identity that must hold did not.
"""
from __future__ import annotations

import argparse
import csv
import io
import sys
from decimal import ROUND_HALF_EVEN, Decimal, localcontext
from fractions import Fraction
from pathlib import Path

from .applications import build_risk_table, det_diag, kaplan_meier
from .errors import (
    EmptyTableError,
    HypothesisError,
    PropertyViolationError,
    SizeBoundError,
    ValidationError,
)
from .heap import heap_prod, parse_poset
from .monoid import INT_MUL, IndexedFamily
from .trace import parse_alphabet, trace_equiv
from .words import DEFAULT_EXPAND_BOUND, INT_SEMIRING, check_expansion

EXIT_OK = 0
EXIT_NOT_EQUIVALENT = 1
EXIT_INPUT = 2
EXIT_EMPTY = 3
EXIT_HYPOTHESIS = 4
EXIT_IDENTITY = 5


class InputError(Exception):
    """Bad command-line input; reported on stderr with exit code 2."""


def parse_scalar(text: str) -> Fraction:
    """Parse ``p/q`` or a decimal literal as an exact rational."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise InputError(f"cannot parse {text!r} as a rational number") from None


def format_decimal(q: Fraction, precision: int) -> str:
    """Round to ``precision`` decimal places and drop trailing zeros."""
    with localcontext() as ctx:
        ctx.prec = max(precision, 1) + len(str(abs(q.numerator))) + len(str(q.denominator)) + 10
        d = Decimal(q.numerator) / Decimal(q.denominator)
        d = d.quantize(Decimal(1).scaleb(-precision), rounding=ROUND_HALF_EVEN)
    text = format(d.normalize(), "f")
    return "0" if text in ("-0", "0", "") else text


def format_exact(q) -> str:
    return str(q)


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from None


def read_survival_csv(text: str) -> list[tuple]:
    """Parse ``time,event`` CSV into ``(Fraction, bool)`` records."""
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header is None or [h.strip() for h in header] != ["time", "event"]:
        raise InputError("line 1: expected header 'time,event'")
    records = []
    for row in reader:
        n = reader.line_num
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) != 2:
            raise InputError(f"line {n}: expected 2 fields, got {len(row)}")
        try:
            time = Fraction(row[0].strip())
        except (ValueError, ZeroDivisionError):
            raise InputError(f"line {n}: bad time {row[0]!r}") from None
        if time < 0:
            raise InputError(f"line {n}: negative time {row[0]!r}")
        flag = row[1].strip()
        if flag not in ("0", "1"):
            raise InputError(f"line {n}: event must be 0 or 1, got {row[1]!r}")
        records.append((time, flag == "1"))
    return records


def cmd_km(args: argparse.Namespace) -> int:
    records = read_survival_csv(_read_text(args.input))
    curve = kaplan_meier(build_risk_table(records))
    lines = ["t,s"]
    for t, s in curve.steps:
        lines.append(f"{format_decimal(t, args.precision)},{format_decimal(s, args.precision)}")
    out = "\n".join(lines) + "\n"
    if args.output:
        try:
            Path(args.output).write_text(out, encoding="utf-8")
        except OSError as exc:
            raise InputError(f"cannot write {args.output}: {exc.strerror or exc}") from None
    else:
        sys.stdout.write(out)
    return EXIT_OK


def cmd_trace_eq(args: argparse.Namespace) -> int:
    alph = parse_alphabet(_read_text(args.alphabet))
    if trace_equiv(args.word1, args.word2, alph):
        print("equivalent")
        return EXIT_OK
    print("not-equivalent")
    return EXIT_NOT_EQUIVALENT


def cmd_heap_eval(args: argparse.Namespace) -> int:
    poset = parse_poset(_read_text(args.input))
    print(heap_prod(poset, INT_MUL))
    return EXIT_OK


def cmd_expand(args: argparse.Namespace) -> int:
    values = []
    for text in args.values:
        try:
            values.append(int(text))
        except ValueError:
            raise InputError(f"cannot parse {text!r} as an integer") from None
    if len(values) > DEFAULT_EXPAND_BOUND:
        raise InputError(f"at most {DEFAULT_EXPAND_BOUND} values allowed, got {len(values)}")
    b = IndexedFamily({k: v for k, v in enumerate(values, 1)})
    product, expansion = check_expansion(b, range(1, len(values) + 1), INT_SEMIRING)
    print(product, expansion, "equal")
    return EXIT_OK


def cmd_det(args: argparse.Namespace) -> int:
    values = [parse_scalar(v) for v in args.values]
    print(format_exact(det_diag(values)))
    return EXIT_OK


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if value < 1:
        raise argparse.ArgumentTypeError("precision must be positive")
    return value


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="finprod", description="Finite products over finite index sets.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("km", help="Kaplan-Meier curve from a time,event CSV")
    p.add_argument("--input", required=True, help="CSV with header time,event")
    p.add_argument("--output", help="output CSV (default: stdout)")
    p.add_argument("--precision", type=_positive_int, default=6, help="decimal places (default 6)")
    p.set_defaults(func=cmd_km)

    p = sub.add_parser("trace-eq", help="decide trace equivalence of two words")
    p.add_argument("--alphabet", required=True, help="alphabet file")
    p.add_argument("word1")
    p.add_argument("word2")
    p.set_defaults(func=cmd_trace_eq)

    p = sub.add_parser("heap-eval", help="product of an integer-labelled poset")
    p.add_argument("--input", required=True, help="poset file")
    p.set_defaults(func=cmd_heap_eval)

    p = sub.add_parser("expand", help="compare prod(1+b) with its subset expansion")
    p.add_argument("values", nargs="*", help="integers b_1 ... b_n")
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("det-diag", help="determinant of a diagonal matrix")
    p.add_argument("values", nargs="*", help="diagonal entries (p/q or decimal)")
    p.set_defaults(func=cmd_det)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, ValidationError, SizeBoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except EmptyTableError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_EMPTY
    except HypothesisError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except PropertyViolationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IDENTITY


if __name__ == "__main__":
    sys.exit(main())
