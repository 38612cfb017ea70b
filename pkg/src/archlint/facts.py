"""Language-neutral facts files.

A facts file serializes an access graph as one clause per line::

    node('p', package).
    node('p.A', class).
    contains('p','p.A').
    isa('p.A','p.Base').
    virtual_contains('layer','p').
    uses('p.A.m()','p.B').
    uses('p.A.m()','p.B','src/p/A.jl',12).

``uses/4`` carries one occurrence (file and line; the column is not stored).
An edge with no recorded occurrence is written as ``uses/2``.
"""

from __future__ import annotations

from .errors import DanglingReference, FactsSyntaxError
from .graph import AccessGraph, EntityKind, Relation, SourceLocation
from .terms import Atom, Ident, TermSyntaxError, quote, read_terms

_EDGE_FUNCTORS = {
    "contains": Relation.CONTAINS,
    "isa": Relation.ISA,
    "virtual_contains": Relation.VIRTUAL_CONTAINS,
    "uses": Relation.USES,
}


def _atom(arg, line: int, what: str) -> str:
    if not isinstance(arg, Atom):
        raise FactsSyntaxError(line, f"{what} must be a quoted atom")
    return arg.value


def parse_facts(text: str) -> AccessGraph:
    try:
        terms = read_terms(text)
    except TermSyntaxError as exc:
        raise FactsSyntaxError(exc.line, exc.reason) from None

    nodes: list[tuple[str, str, int]] = []
    edges: list[tuple[Relation, str, str, SourceLocation | None, int]] = []
    for term in terms:
        line = term.line
        if term.functor == "node" and term.arity == 2:
            entity = _atom(term.args[0], line, "node id")
            kind_arg = term.args[1]
            if not isinstance(kind_arg, (Ident, Atom)):
                raise FactsSyntaxError(line, "node kind must be an identifier")
            try:
                kind = EntityKind(kind_arg.value)
            except ValueError:
                raise FactsSyntaxError(line, f"unknown node kind {kind_arg.value!r}") from None
            nodes.append((entity, kind, line))
        elif term.functor in _EDGE_FUNCTORS and term.arity == 2:
            a = _atom(term.args[0], line, "edge endpoint")
            b = _atom(term.args[1], line, "edge endpoint")
            edges.append((_EDGE_FUNCTORS[term.functor], a, b, None, line))
        elif term.functor == "uses" and term.arity == 4:
            a = _atom(term.args[0], line, "edge endpoint")
            b = _atom(term.args[1], line, "edge endpoint")
            file = _atom(term.args[2], line, "file name")
            lineno = term.args[3]
            if not isinstance(lineno, int) or lineno < 1:
                raise FactsSyntaxError(line, "line number must be a positive integer")
            edges.append((Relation.USES, a, b, SourceLocation(file, lineno), line))
        else:
            raise FactsSyntaxError(line, f"unknown clause {term.functor}/{term.arity}")

    g = AccessGraph()
    for entity, kind, line in sorted(nodes):
        try:
            g.add_node(entity, kind)
        except ValueError as exc:
            raise FactsSyntaxError(line, str(exc)) from None
    for rel, a, b, _, line in edges:
        for end in (a, b):
            if end not in g:
                raise DanglingReference(end, line)
    rank = list(_EDGE_FUNCTORS.values())
    for rel, a, b, loc, _ in sorted(edges, key=lambda e: (rank.index(e[0]), e[1], e[2],
                                                          e[3] is not None, e[3] or ())):
        g.add_edge(rel, a, b, loc)
    return g


def emit_facts(g: AccessGraph) -> str:
    lines = [f"node({quote(n)},{g.nodes[n].kind.value})." for n in sorted(g.nodes)]
    lines += [f"contains({quote(a)},{quote(b)})." for a, b in sorted(g.contains)]
    lines += [f"isa({quote(a)},{quote(b)})." for a, b in sorted(g.isa)]
    lines += [f"virtual_contains({quote(a)},{quote(b)})."
              for a, b in sorted(g.virtual_contains)]
    for edge in g.uses:
        if not edge.occurrences:
            lines.append(f"uses({quote(edge.src)},{quote(edge.tgt)}).")
        for loc in sorted(edge.occurrences, key=lambda o: (o.file, o.line)):
            lines.append(f"uses({quote(edge.src)},{quote(edge.tgt)},"
                         f"{quote(loc.file)},{loc.line}).")
    return "".join(line + "\n" for line in lines)

