"""Command-line driver: ``verify``, ``classify-cp4`` and ``genus-table``."""

from __future__ import annotations

import argparse
import sys

from .report import (
    GENUS_NAMES,
    MAX_TABLE_DEGREE,
    classify_cp4_document,
    dumps,
    genus_table_document,
    render_text,
    verify_document,
)


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if value < 1:
        raise argparse.ArgumentTypeError("n must be at least 1")
    return value


def _table_degree(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if not 0 <= value <= MAX_TABLE_DEGREE:
        raise argparse.ArgumentTypeError(f"degree must be between 0 and {MAX_TABLE_DEGREE}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hirzebruch",
        description="Exact genus computations and CP^n classification checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser(
        "verify", help="classify a Kähler CP^n-like manifold with standard Pontrjagin classes"
    )
    verify.add_argument("--n", type=_positive_int, required=True)
    verify.add_argument("--simply-connected", action="store_true")
    verify.add_argument("--json", action="store_true")

    cp4 = sub.add_parser("classify-cp4", help="run the CP^4 Diophantine pipeline")
    cp4.add_argument("--simply-connected", action="store_true")
    cp4.add_argument("--mode", choices=("ring", "homotopy"), default="ring")
    cp4.add_argument("--json", action="store_true")

    table = sub.add_parser("genus-table", help="print multiplicative sequence polynomials")
    table.add_argument("genus", choices=GENUS_NAMES)
    table.add_argument("max_degree", type=_table_degree)
    table.add_argument("--json", action="store_true")
    return parser


def _command_echo(args: argparse.Namespace) -> list[str]:
    if args.command == "verify":
        echo = ["verify", "--n", str(args.n)]
        if args.simply_connected:
            echo.append("--simply-connected")
    elif args.command == "classify-cp4":
        echo = ["classify-cp4", "--mode", args.mode]
        if args.simply_connected:
            echo.append("--simply-connected")
    else:
        echo = ["genus-table", args.genus, str(args.max_degree)]
    return echo


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    echo = _command_echo(args)
    if args.command == "verify":
        doc = verify_document(args.n, args.simply_connected, echo)
    elif args.command == "classify-cp4":
        doc = classify_cp4_document(args.simply_connected, args.mode, echo)
    else:
        doc = genus_table_document(args.genus, args.max_degree, echo)
    sys.stdout.write(dumps(doc) if args.json else render_text(doc))
    return 0


if __name__ == "__main__":
    sys.exit(main())
