"""Exception hierarchy shared by every stage of the checker."""

from __future__ import annotations


class ArchlintError(Exception):
    """Base class for all errors raised by archlint."""


# -- access graph ------------------------------------------------------------

class GraphError(ArchlintError):
    pass


class KindConflict(GraphError):
    def __init__(self, entity: str, existing: str, new: str):
        super().__init__(f"{entity!r} already declared as {existing}, not {new}")
        self.entity = entity
        self.existing = existing
        self.new = new


class UnknownEntity(GraphError):
    def __init__(self, entity: str):
        super().__init__(f"unknown entity {entity!r}")
        self.entity = entity


class SelfUse(GraphError):
    def __init__(self, entity: str):
        super().__init__(f"{entity!r} cannot use itself")
        self.entity = entity


class ContainsCycleOrSecondParent(GraphError):
    pass


class IsACycle(GraphError):
    pass


class InvalidEdge(GraphError):
    """An edge whose endpoint kinds break a graph invariant."""


# -- facts files -------------------------------------------------------------

class FactsSyntaxError(ArchlintError):
    def __init__(self, line: int, reason: str):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason


class DanglingReference(ArchlintError):
    def __init__(self, entity: str, line: int | None = None):
        where = f" (line {line})" if line is not None else ""
        super().__init__(f"reference to undeclared entity {entity!r}{where}")
        self.entity = entity
        self.line = line


# -- JavaLite frontend -------------------------------------------------------

class ParseError(ArchlintError):
    def __init__(self, file: str, line: int, column: int, expected: str):
        super().__init__(f"{file}:{line}:{column}: expected {expected}")
        self.file = file
        self.line = line
        self.column = column
        self.expected = expected


class DuplicateDeclaration(ArchlintError):
    pass


class AmbiguousName(ArchlintError):
    def __init__(self, name: str, candidates, location=None):
        where = f"{location}: " if location is not None else ""
        listed = ", ".join(sorted(candidates))
        super().__init__(f"{where}ambiguous name {name!r}: {listed}")
        self.name = name
        self.candidates = sorted(candidates)
        self.location = location


# -- constraint language -----------------------------------------------------

class ConstraintSyntaxError(ArchlintError):
    def __init__(self, line: int, column: int, reason: str):
        super().__init__(f"line {line}, column {column}: {reason}")
        self.line = line
        self.column = column
        self.reason = reason


class UnknownPredicate(ArchlintError):
    def __init__(self, name: str, arity: int, line: int | None = None):
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}unknown predicate {name}/{arity}")
        self.name = name
        self.arity = arity
        self.line = line


class ReservedPredicate(ArchlintError):
    def __init__(self, name: str, line: int | None = None):
        where = f"line {line}: " if line is not None else ""
        super().__init__(
            f"{where}{name} cannot be stated directly; write hideFrom "
            "so that canSee exceptions can apply"
        )
        self.name = name
        self.line = line


class DuplicateScopeName(ArchlintError):
    def __init__(self, name: str, line: int | None = None):
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}scope name {name!r} is already defined")
        self.name = name
        self.line = line


class UnknownName(ArchlintError):
    def __init__(self, ref: str, clause=None):
        where = f" in {clause.to_text()} (line {clause.line})" if clause is not None else ""
        super().__init__(f"no entity matches {ref!r}{where}")
        self.ref = ref
        self.clause = clause
