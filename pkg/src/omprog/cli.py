"""Command line client.

Thin wrapper over the command layer: read the named files, run one command,
print its JSON report. Exit status 0 means a true verdict (or successful
construction), 1 a false verdict, 2 malformed input or violated
preconditions. The serve subcommand starts the HTTP service instead.
"""

from __future__ import annotations

import argparse
import sys

from omprog import commands
from omprog.formats import render_report


def _read(path: str) -> str:
    with open(path, "r", encoding="ascii") as handle:
        return handle.read()


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="omprog",
        description="compute with oriented matroid programs given by cocircuits",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--time", action="store_true", help="include timing in the report")
        return p

    p = add("validate", "check a document against the cocircuit axioms")
    p.add_argument("file")

    p = add("euclidean", "decide Euclideanness of one program or of all admissible pairs")
    p.add_argument("file")
    p.add_argument("--g", help="infinity element")
    p.add_argument("--f", help="objective element")
    p.add_argument("--all-pairs", action="store_true", dest="all_pairs")

    p = add("lex-extend", "adjoin an element by a lexicographic localization")
    p.add_argument("file")
    p.add_argument("--base", required=True, help="comma separated independent elements")
    p.add_argument("--signs", required=True, help="template signs, one of +- per base element")
    p.add_argument("--name", required=True, help="name of the new element")

    p = add("parallel-extend", "adjoin an element parallel to the objective through a vertex")
    p.add_argument("file")
    p.add_argument("--g", required=True)
    p.add_argument("--f", required=True)
    p.add_argument("--through", required=True, help="sign string of the vertex")
    p.add_argument("--name", required=True)

    p = add("sweep", "sweep a program along a vertex order")
    p.add_argument("file")
    p.add_argument("--g", required=True)
    p.add_argument("--f", required=True)
    p.add_argument("--order", help="order file; the default order is the deterministic sweep order")

    p = add("shell", "construct a certified shelling order")
    p.add_argument("file")
    p.add_argument("--f", required=True)
    p.add_argument("--tope", action="store_true", help="shell the feasible region")
    p.add_argument("--whole", action="store_true", help="shell the whole lattice after deleting f")
    p.add_argument("--g", help="infinity element (tope scope)")
    p.add_argument("--basis", help="comma separated ordered basis (whole scope)")

    p = add("verify-shelling", "check an atom order for the recursive ordering property")
    p.add_argument("file")
    p.add_argument("--f", required=True)
    p.add_argument("--order", required=True, help="order file")
    p.add_argument("--g", help="verify against the feasible region of (g, f) instead of the whole lattice")

    p = add("from-matrix", "build the oriented matroid of integer row vectors")
    p.add_argument("file")

    p = sub.add_parser("serve", help="start the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)

    return parser


def _dispatch(args: argparse.Namespace) -> dict:
    if args.command == "validate":
        return commands.validate_command(_read(args.file), timing=args.time)
    if args.command == "euclidean":
        return commands.euclidean_command(
            _read(args.file), g=args.g, f=args.f, all_pairs=args.all_pairs, timing=args.time
        )
    if args.command == "lex-extend":
        return commands.lex_extend_command(
            _read(args.file), args.base.split(","), args.signs, args.name, timing=args.time
        )
    if args.command == "parallel-extend":
        return commands.parallel_extend_command(
            _read(args.file), args.g, args.f, args.through, args.name, timing=args.time
        )
    if args.command == "sweep":
        order_text = _read(args.order) if args.order else None
        return commands.sweep_command(
            _read(args.file), args.g, args.f, order_text=order_text, timing=args.time
        )
    if args.command == "shell":
        if args.tope == args.whole:
            raise ValueError("choose exactly one of --tope and --whole")
        scope = "tope" if args.tope else "whole"
        basis = args.basis.split(",") if args.basis else None
        return commands.shell_command(
            _read(args.file), args.f, scope, g=args.g, basis=basis, timing=args.time
        )
    if args.command == "verify-shelling":
        return commands.verify_shelling_command(
            _read(args.file), args.f, _read(args.order), g=args.g, timing=args.time
        )
    if args.command == "from-matrix":
        return commands.from_matrix_command(_read(args.file), timing=args.time)
    raise ValueError(f"unknown command {args.command!r}")


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command == "serve":
        import uvicorn

        uvicorn.run("omprog.service:app", host=args.host, port=args.port)
        return 0
    try:
        report = _dispatch(args)
    except (ValueError, RuntimeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(render_report(report))
    return 0 if report["verdict"] else 1


if __name__ == "__main__":
    sys.exit(main())
