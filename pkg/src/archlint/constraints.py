"""Parser for coupling-constraint files.

A constraint file is a sequence of clauses in the same notation as facts
files.  Recognised predicates (``R`` = quoted atom, ``L`` = list of atoms)::

    hideFrom(R target, R viewer)          canSee(R viewer, R target)
    hideScope(R scope)                    hideScope(R scope, L facades, L interlopers, L friends)
    hideScopeBut(R scope, L facades)      hideScopeFrom(R scope, L interlopers)
    hideScopeButFrom(R scope, L friends)  hideSet(R set)
    virtualScope(R name, L elements)      declareSet(R name, L elements)
    layers(L top_to_bottom)

A single atom is accepted wherever a list is expected and is read as a
one-element list.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import (
    ConstraintSyntaxError,
    DuplicateScopeName,
    ReservedPredicate,
    UnknownPredicate,
)
from .terms import Atom, AtomList, TermSyntaxError, quote, read_terms

REF, LIST = "ref", "list"

SIGNATURES: dict[tuple[str, int], tuple[str, ...]] = {
    ("hideFrom", 2): (REF, REF),
    ("canSee", 2): (REF, REF),
    ("hideScope", 1): (REF,),
    ("hideScope", 4): (REF, LIST, LIST, LIST),
    ("hideScopeBut", 2): (REF, LIST),
    ("hideScopeFrom", 2): (REF, LIST),
    ("hideScopeButFrom", 2): (REF, LIST),
    ("virtualScope", 2): (REF, LIST),
    ("declareSet", 2): (REF, LIST),
    ("hideSet", 1): (REF,),
    ("layers", 1): (LIST,),
}

SCOPE_DEFINITIONS = ("virtualScope", "declareSet")
RESERVED = ("hiddenFrom",)


@dataclass(frozen=True)
class ConstraintClause:
    functor: str
    args: tuple
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)

    @property
    def kind(self) -> str:
        """Functor, with the four-argument hideScope reported as ``hideScope4``."""
        if self.functor == "hideScope" and len(self.args) == 4:
            return "hideScope4"
        return self.functor

    @property
    def defines_scope(self) -> bool:
        return self.functor in SCOPE_DEFINITIONS

    def refs(self) -> list[str]:
        out = []
        for arg in self.args:
            out.extend(arg if isinstance(arg, tuple) else (arg,))
        return out

    def to_text(self) -> str:
        parts = []
        for arg in self.args:
            if isinstance(arg, tuple):
                parts.append("[" + ", ".join(quote(a) for a in arg) + "]")
            else:
                parts.append(quote(arg))
        return f"{self.functor}({', '.join(parts)})."

    def __str__(self) -> str:
        return self.to_text()


@dataclass
class ConstraintProgram:
    clauses: list[ConstraintClause] = field(default_factory=list)

    def __iter__(self):
        return iter(self.clauses)

    def __len__(self) -> int:
        return len(self.clauses)

    def to_text(self) -> str:
        return "".join(c.to_text() + "\n" for c in self.clauses)


def clause(functor: str, *args) -> ConstraintClause:
    """Build a clause programmatically; lists may be given as any iterable."""
    norm = tuple(a if isinstance(a, str) else tuple(a) for a in args)
    return _check_shape(ConstraintClause(functor, norm))


def parse_constraints(text: str) -> ConstraintProgram:
    try:
        terms = read_terms(text)
    except TermSyntaxError as exc:
        raise ConstraintSyntaxError(exc.line, exc.column, exc.reason) from None

    clauses = []
    for term in terms:
        args = []
        for arg in term.args:
            if isinstance(arg, Atom):
                args.append(arg.value)
            elif isinstance(arg, AtomList):
                args.append(arg.values)
            else:
                raise ConstraintSyntaxError(term.line, term.column,
                                            f"{term.functor}: arguments must be quoted "
                                            "atoms or lists of atoms")
        c = ConstraintClause(term.functor, tuple(args), term.line, term.column)
        clauses.append(_check_shape(c))
    return _check_program(ConstraintProgram(clauses))


def _check_shape(c: ConstraintClause) -> ConstraintClause:
    line = c.line or None
    if c.functor in RESERVED:
        raise ReservedPredicate(c.functor, line)
    sig = SIGNATURES.get((c.functor, len(c.args)))
    if sig is None:
        raise UnknownPredicate(c.functor, len(c.args), line)
    args = []
    for slot, arg in zip(sig, c.args):
        if slot == REF:
            if isinstance(arg, tuple):
                raise ConstraintSyntaxError(c.line, c.column,
                                            f"{c.functor}: expected an atom, found a list")
            args.append(arg)
        else:
            args.append(arg if isinstance(arg, tuple) else (arg,))
    if c.functor == "layers" and len(args[0]) < 2:
        raise ConstraintSyntaxError(c.line, c.column, "layers needs at least two layers")
    return ConstraintClause(c.functor, tuple(args), c.line, c.column)


def _check_program(program: ConstraintProgram) -> ConstraintProgram:
    defined: set[str] = set()
    for c in program.clauses:
        if c.defines_scope:
            if c.args[0] in defined:
                raise DuplicateScopeName(c.args[0], c.line)
            defined.add(c.args[0])
    return program
