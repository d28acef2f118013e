"""Command line front end: list figure ids, render one figure from tables.

Exit codes: 0 success, 1 data error (missing column, empty grid, bad table),
2 usage error (unknown figure id, malformed --input, bad paths).
"""

from __future__ import annotations

import argparse
import sys

from .figures import FigureSpec, figure_ids, render
from .io import PlotDataError


def _parse_inputs(pairs: list[str]) -> dict[str, str]:
    inputs: dict[str, str] = {}
    for pair in pairs:
        role, sep, path = pair.partition("=")
        if not sep or not role or not path:
            raise ValueError(f"--input expects role=path, got {pair!r}")
        inputs[role] = path
    return inputs


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="stabplots")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("list", help="print known figure ids")

    rend = sub.add_parser("render", help="render one figure")
    rend.add_argument("figure_id")
    rend.add_argument("--input", action="append", default=[],
                      metavar="ROLE=PATH", help="table for one input role")
    rend.add_argument("--output", required=True, help="image path (.png or .svg)")
    rend.add_argument("--title", default=None)
    rend.add_argument("--dpi", type=int, default=150)

    args = parser.parse_args(argv)

    if args.command == "list":
        for fid in figure_ids():
            print(fid)
        return 0

    try:
        inputs = _parse_inputs(args.input)
        if args.figure_id not in figure_ids():
            print(f"unknown figure id {args.figure_id!r}", file=sys.stderr)
            return 2
        spec = FigureSpec(
            figure_id=args.figure_id,
            inputs=inputs,
            output=args.output,
            title=args.title,
            dpi=args.dpi,
        )
        path = render(spec)
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(str(exc), file=sys.stderr)
        return 2
    except PlotDataError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
