"""Command line: ``archlint extract | check | graph``.

Exit codes: 0 clean, 1 violations found, 2 bad input (source, facts or
constraint errors), 3 I/O failure.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .constraints import parse_constraints
from .errors import ArchlintError, ParseError
from .evaluate import bind_refs, check
from .facts import emit_facts, parse_facts
from .graph import AccessGraph
from .javalite import collect_sources, parse_file, resolve
from .report import VIOLATION_COLOR, CheckReport, render_dot, render_structured, render_text

EXIT_OK, EXIT_VIOLATIONS, EXIT_INPUT, EXIT_IO = 0, 1, 2, 3


class _InputError(Exception):
    """Already reported on stderr; carries the exit code."""

    def __init__(self, code: int):
        self.code = code


def _fail(message: str, code: int = EXIT_INPUT):
    print(f"archlint: {message}", file=sys.stderr)
    raise _InputError(code)


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        _fail(f"cannot read {path}: {exc}", EXIT_IO)


def _write(path: str | None, text: str):
    if path is None:
        sys.stdout.write(text)
        return
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as exc:
        _fail(f"cannot write {path}: {exc}", EXIT_IO)


def _graph_from_sources(inputs) -> AccessGraph:
    for p in inputs:
        if not Path(p).exists():
            _fail(f"cannot read {p}: no such file or directory", EXIT_IO)
    try:
        files = collect_sources(inputs)
    except (OSError, UnicodeDecodeError) as exc:
        _fail(f"cannot read sources: {exc}", EXIT_IO)
    units, errors = [], []
    for path, text in files:
        try:
            units.append(parse_file(path, text))
        except ParseError as exc:
            errors.append(exc)
    for exc in errors:
        print(str(exc), file=sys.stderr)
    if errors:
        raise _InputError(EXIT_INPUT)
    try:
        return resolve(units)
    except ArchlintError as exc:
        _fail(str(exc))


def _load_graph(args) -> AccessGraph:
    if args.facts and args.inputs:
        _fail("give either source inputs or --facts, not both")
    if args.facts:
        try:
            return parse_facts(_read(args.facts))
        except ArchlintError as exc:
            _fail(f"{args.facts}: {exc}")
    if not args.inputs:
        _fail("no input: give source files/directories or --facts")
    return _graph_from_sources(args.inputs)


def _bind(args, g: AccessGraph):
    try:
        program = parse_constraints(_read(args.constraints))
        return bind_refs(program, g)
    except ArchlintError as exc:
        _fail(f"{args.constraints}: {exc}")


def run_extract(args) -> int:
    g = _graph_from_sources(args.inputs)
    _write(args.out, emit_facts(g))
    return EXIT_OK


def run_check(args) -> int:
    g = _load_graph(args)
    bound = _bind(args, g)
    report = CheckReport.build(bound.graph, check(bound), args.constraints)
    if args.format == "structured":
        text = render_structured(report)
    else:
        text = render_text(report, color=os.environ.get("ARCHLINT_COLOR") == "1")
    _write(args.out, text)
    return report.exit_status


def run_graph(args) -> int:
    g = _load_graph(args)
    report = None
    if args.constraints:
        bound = _bind(args, g)
        g = bound.graph
        report = CheckReport.build(g, check(bound), args.constraints)
    try:
        dot = render_dot(g, report, args.filter, args.violation_color)
    except ArchlintError as exc:
        _fail(f"--filter: {exc}")
    _write(args.dot, dot)
    return report.exit_status if report else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="archlint",
        description="Check coupling constraints against a program's access graph.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("extract", help="write the access graph of sources as a facts file")
    p.add_argument("inputs", nargs="+", help="source files or directories (.jl, .java)")
    p.add_argument("--out", help="facts file to write (default: stdout)")
    p.set_defaults(run=run_extract)

    for name, helptext in (("check", "report constraint violations"),
                           ("graph", "emit the access graph as DOT")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("inputs", nargs="*", help="source files or directories")
        p.add_argument("--facts", help="read the graph from a facts file instead of sources")
        p.add_argument("--constraints", required=name == "check",
                       help="constraint file")
        if name == "check":
            p.add_argument("--format", choices=("text", "structured"), default="text")
            p.add_argument("--out", help="report file (default: stdout)")
            p.set_defaults(run=run_check)
        else:
            p.add_argument("--dot", help="DOT file to write (default: stdout)")
            p.add_argument("--filter", help="only draw this scope and its direct neighbours")
            p.add_argument("--violation-color", default=VIOLATION_COLOR)
            p.set_defaults(run=run_graph)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.run(args)
    except _InputError as exc:
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
