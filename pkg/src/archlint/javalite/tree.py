"""Syntax tree for the JavaLite subset."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..graph import SourceLocation

PRIMITIVES = frozenset({"int", "long", "short", "byte", "char", "boolean", "float", "double"})


@dataclass
class QualifiedName:
    parts: list[str]
    loc: SourceLocation

    def __str__(self) -> str:
        return ".".join(self.parts)


@dataclass
class TypeRef:
    """A type as written: ``java.util.List<String>[]``.

    ``names`` is empty for the wildcard ``?``; its bound (if any) sits in ``args``.
    """
    names: list[str]
    loc: SourceLocation
    args: list[TypeRef] = field(default_factory=list)
    dims: int = 0

    @property
    def is_primitive(self) -> bool:
        return len(self.names) == 1 and self.names[0] in PRIMITIVES

    @property
    def simple_text(self) -> str:
        """Text used in member ids: last name segment, no type arguments."""
        base = self.names[-1] if self.names else "?"
        return base + "[]" * self.dims


@dataclass
class TypeParam:
    name: str
    loc: SourceLocation
    bounds: list[TypeRef] = field(default_factory=list)


# -- declarations ------------------------------------------------------------

@dataclass
class Param:
    name: str
    type: TypeRef
    loc: SourceLocation


@dataclass
class FieldDecl:
    name: str
    loc: SourceLocation
    type: TypeRef
    init: object | None = None
    modifiers: frozenset[str] = frozenset()


@dataclass
class MethodDecl:
    name: str
    loc: SourceLocation
    return_type: TypeRef | None  # None for void
    params: list[Param]
    throws: list[TypeRef]
    body: Block | None
    type_params: list[TypeParam] = field(default_factory=list)
    modifiers: frozenset[str] = frozenset()


@dataclass
class ConstructorDecl:
    name: str
    loc: SourceLocation
    params: list[Param]
    throws: list[TypeRef]
    body: Block
    type_params: list[TypeParam] = field(default_factory=list)
    modifiers: frozenset[str] = frozenset()


@dataclass
class TypeDecl:
    name: str
    loc: SourceLocation
    kind: str  # "class" | "interface"
    extends: list[TypeRef]
    implements: list[TypeRef]
    members: list
    type_params: list[TypeParam] = field(default_factory=list)
    modifiers: frozenset[str] = frozenset()


@dataclass
class CompilationUnit:
    path: str
    package: QualifiedName | None
    imports: list[QualifiedName]
    types: list[TypeDecl]


# -- statements --------------------------------------------------------------

@dataclass
class Block:
    stmts: list


@dataclass
class LocalVar:
    type: TypeRef
    names: list[tuple[str, SourceLocation, object | None]]


@dataclass
class ExprStmt:
    expr: object


@dataclass
class Return:
    expr: object | None


@dataclass
class Throw:
    expr: object


@dataclass
class If:
    cond: object
    then: object
    orelse: object | None


@dataclass
class While:
    cond: object
    body: object


@dataclass
class For:
    init: list
    cond: object | None
    update: list
    body: object


@dataclass
class ForEach:
    type: TypeRef
    name: str
    loc: SourceLocation
    iterable: object
    body: object


@dataclass
class Jump:
    keyword: str  # break | continue


# -- expressions -------------------------------------------------------------

@dataclass
class Literal:
    kind: str  # int | float | string | char | boolean | null
    loc: SourceLocation


@dataclass
class Name:
    name: str
    loc: SourceLocation


@dataclass
class This:
    loc: SourceLocation


@dataclass
class Super:
    loc: SourceLocation


@dataclass
class FieldAccess:
    target: object
    name: str
    loc: SourceLocation


@dataclass
class MethodCall:
    target: object | None
    name: str
    loc: SourceLocation
    args: list


@dataclass
class ConstructorCall:
    """``this(...)`` or ``super(...)`` at the start of a constructor body."""
    keyword: str
    loc: SourceLocation
    args: list


@dataclass
class New:
    type: TypeRef
    args: list
    loc: SourceLocation


@dataclass
class NewArray:
    type: TypeRef
    sizes: list
    init: ArrayInit | None
    loc: SourceLocation


@dataclass
class ArrayInit:
    elements: list


@dataclass
class Index:
    target: object
    index: object


@dataclass
class Unary:
    op: str
    operand: object


@dataclass
class Binary:
    op: str
    left: object
    right: object


@dataclass
class Assign:
    op: str
    target: object
    value: object


@dataclass
class Conditional:
    cond: object
    then: object
    orelse: object


@dataclass
class Cast:
    type: TypeRef
    expr: object


@dataclass
class InstanceOf:
    expr: object
    type: TypeRef
