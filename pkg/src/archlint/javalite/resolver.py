"""Name resolution and static typing for JavaLite, producing an access graph.

Every name occurrence that denotes a declared entity becomes a ``uses`` edge
from the innermost enclosing declared entity (field, method, constructor, or
the type itself for its header) to the denoted entity.  Names that cannot be
bound to anything in the analysed sources become ``unresolved`` nodes.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import AmbiguousName, DuplicateDeclaration
from ..graph import AccessGraph, EntityKind, Relation, SourceLocation
from . import tree as t


@dataclass(frozen=True)
class Ty:
    """Static type: an entity id (declared or unresolved) or None when unknown."""
    id: str | None
    dims: int = 0


UNKNOWN = Ty(None)


@dataclass
class _Member:
    id: str
    decl: object
    ty: Ty = UNKNOWN
    params: list[Ty] = field(default_factory=list)


@dataclass
class _TypeInfo:
    id: str
    decl: t.TypeDecl
    unit: t.CompilationUnit
    package: str
    superclass: str | None = None
    fields: dict[str, _Member] = field(default_factory=dict)
    methods: dict[tuple[str, int], _Member] = field(default_factory=dict)
    ctors: dict[int, _Member] = field(default_factory=dict)


# expression results
@dataclass(frozen=True)
class _Value:
    ty: Ty


@dataclass(frozen=True)
class _TypeName:
    ty: Ty


@dataclass(frozen=True)
class _Package:
    name: str


@dataclass
class _Ctx:
    unit: t.CompilationUnit
    info: _TypeInfo
    source: str
    type_vars: frozenset[str]
    scopes: list[dict[str, Ty]] = field(default_factory=list)

    def lookup_local(self, name: str) -> Ty | None:
        for scope in reversed(self.scopes):
            if name in scope:
                return scope[name]
        return None


def _qualify(package: str, name: str) -> str:
    return f"{package}.{name}" if package else name


class Resolver:
    def __init__(self, units: list[t.CompilationUnit]):
        self.units = sorted(units, key=lambda u: u.path)
        self.g = AccessGraph()
        self.types: dict[str, _TypeInfo] = {}
        self.packages: set[str] = set()

    def run(self) -> AccessGraph:
        self._declare_types()
        self._declare_members()
        self._resolve_headers()
        self._resolve_signatures()
        self._resolve_bodies()
        return self.g

    # -- declarations --------------------------------------------------------

    def _declare_types(self):
        for unit in self.units:
            package = str(unit.package) if unit.package else ""
            if package:
                parts = package.split(".")
                parent = None
                for i in range(len(parts)):
                    name = ".".join(parts[: i + 1])
                    self.g.add_node(name, EntityKind.PACKAGE,
                                    unit.package.loc if name == package else None)
                    self.packages.add(name)
                    if parent is not None:
                        self.g.add_edge(Relation.CONTAINS, parent, name)
                    parent = name
            for decl in unit.types:
                tid = _qualify(package, decl.name)
                if tid in self.types:
                    raise DuplicateDeclaration(f"{decl.loc}: type {tid} is declared twice")
                self.g.add_node(tid, EntityKind(decl.kind), decl.loc)
                if package:
                    self.g.add_edge(Relation.CONTAINS, package, tid)
                self.types[tid] = _TypeInfo(tid, decl, unit, package)

    def _declare_members(self):
        for info in self.types.values():
            for m in info.decl.members:
                if isinstance(m, t.FieldDecl):
                    mid, kind, table, key = f"{info.id}.{m.name}", EntityKind.FIELD, info.fields, m.name
                else:
                    sig = ",".join(p.type.simple_text for p in m.params)
                    mid = f"{info.id}.{m.name}({sig})"
                    if isinstance(m, t.ConstructorDecl):
                        kind, table, key = EntityKind.CONSTRUCTOR, info.ctors, len(m.params)
                    else:
                        kind, table, key = EntityKind.METHOD, info.methods, (m.name, len(m.params))
                if key in table:
                    raise DuplicateDeclaration(
                        f"{m.loc}: {info.id} already declares {table[key].id}")
                table[key] = _Member(mid, m)
                self.g.add_node(mid, kind, m.loc)
                self.g.add_edge(Relation.CONTAINS, info.id, mid)

    def _resolve_headers(self):
        for info in self.types.values():
            decl = info.decl
            ctx = self._ctx(info, info.id, decl.type_params)
            self._type_param_bounds(decl.type_params, ctx)
            for i, ref in enumerate(decl.extends + decl.implements):
                sup = self._resolve_type(ref, ctx)
                if sup.id is None or sup.id == info.id:
                    continue
                self.g.add_edge(Relation.ISA, info.id, sup.id)
                if decl.kind == "class" and i == 0 and decl.extends:
                    info.superclass = sup.id

    def _resolve_signatures(self):
        for info in self.types.values():
            for member in (*info.fields.values(), *info.methods.values(), *info.ctors.values()):
                decl = member.decl
                ctx = self._ctx(info, member.id, info.decl.type_params,
                                getattr(decl, "type_params", []))
                if isinstance(decl, t.FieldDecl):
                    member.ty = self._resolve_type(decl.type, ctx)
                    continue
                self._type_param_bounds(decl.type_params, ctx)
                if isinstance(decl, t.MethodDecl) and decl.return_type is not None:
                    member.ty = self._resolve_type(decl.return_type, ctx)
                member.params = [self._resolve_type(p.type, ctx) for p in decl.params]
                for ref in decl.throws:
                    self._resolve_type(ref, ctx)

    def _resolve_bodies(self):
        for info in self.types.values():
            for member in (*info.fields.values(), *info.methods.values(), *info.ctors.values()):
                decl = member.decl
                ctx = self._ctx(info, member.id, info.decl.type_params,
                                getattr(decl, "type_params", []))
                if isinstance(decl, t.FieldDecl):
                    if decl.init is not None:
                        self._expr(decl.init, ctx)
                    continue
                if decl.body is None:
                    continue
                ctx.scopes.append({p.name: ty for p, ty in zip(decl.params, member.params)})
                self._stmt(decl.body, ctx)

    def _ctx(self, info, source, *type_params) -> _Ctx:
        names = frozenset(tp.name for group in type_params for tp in group)
        return _Ctx(info.unit, info, source, names)

    def _type_param_bounds(self, params, ctx):
        for tp in params:
            for bound in tp.bounds:
                self._resolve_type(bound, ctx)

    # -- recording -----------------------------------------------------------

    def _use(self, ctx: _Ctx, target: str, loc: SourceLocation):
        if target != ctx.source:
            self.g.add_edge(Relation.USES, ctx.source, target, loc)

    def _external(self, entity: str, owner: str | None = None) -> str:
        if entity not in self.g:
            self.g.add_node(entity, EntityKind.UNRESOLVED)
            if owner is not None:
                self.g.add_edge(Relation.CONTAINS, owner, entity)
        return entity

    # -- types ---------------------------------------------------------------

    def _lookup_type(self, simple: str, ctx: _Ctx, loc: SourceLocation) -> str | None:
        """Entity id for a simple type name; None for a type variable."""
        if simple in ctx.type_vars:
            return None
        local = _qualify(ctx.info.package, simple)
        known = local if local in self.types else None
        imported = sorted({str(q) for q in ctx.unit.imports if q.parts[-1] == simple})
        if len(imported) > 1:
            raise AmbiguousName(simple, imported, loc)
        if known and imported and imported[0] != known:
            raise AmbiguousName(simple, [known, imported[0]], loc)
        if known:
            return known
        if imported:
            return self._external(imported[0])
        return self._external(simple)

    def _resolve_type(self, ref: t.TypeRef, ctx: _Ctx) -> Ty:
        for arg in ref.args:
            self._resolve_type(arg, ctx)
        if not ref.names or ref.is_primitive:
            return Ty(None, ref.dims)
        if len(ref.names) == 1:
            entity = self._lookup_type(ref.names[0], ctx, ref.loc)
            if entity is None:
                return Ty(None, ref.dims)
        else:
            entity = ".".join(ref.names)
            if entity not in self.types:
                entity = self._external(entity)
        self._use(ctx, entity, ref.loc)
        return Ty(entity, ref.dims)

    # -- members -------------------------------------------------------------

    def _hierarchy(self, tid: str) -> list[str]:
        return self.g.supertypes_star(tid)

    def _find_field(self, tid: str, name: str) -> _Member | None:
        for sup in self._hierarchy(tid):
            info = self.types.get(sup)
            if info is not None and name in info.fields:
                return info.fields[name]
        return None

    def _find_method(self, tid: str, name: str, arity: int) -> _Member | None:
        for sup in self._hierarchy(tid):
            info = self.types.get(sup)
            if info is not None and (name, arity) in info.methods:
                return info.methods[(name, arity)]
        return None

    def _unresolved_owner(self, tid: str) -> str | None:
        if tid not in self.types:
            return tid
        for sup in self._hierarchy(tid):
            if sup not in self.types:
                return sup
        return None

    def _fallback_member(self, tid: str, name: str) -> str:
        owner = self._unresolved_owner(tid)
        if owner is None:
            return self._external(name)
        if self.g.kind(owner) is not EntityKind.UNRESOLVED:
            return self._external(f"{owner}.{name}")
        return self._external(f"{owner}.{name}", owner)

    def _member_access(self, tid: str | None, name: str, loc, ctx, arity=None) -> Ty:
        if tid is None:
            return UNKNOWN
        if arity is None:
            member = self._find_field(tid, name)
        else:
            member = self._find_method(tid, name, arity)
        if member is None:
            self._use(ctx, self._fallback_member(tid, name), loc)
            return UNKNOWN
        self._use(ctx, member.id, loc)
        return member.ty

    # -- statements ----------------------------------------------------------

    def _stmt(self, s, ctx: _Ctx):
        if isinstance(s, t.Block):
            ctx.scopes.append({})
            for inner in s.stmts:
                self._stmt(inner, ctx)
            ctx.scopes.pop()
        elif isinstance(s, t.LocalVar):
            ty = self._resolve_type(s.type, ctx)
            for name, _, init in s.names:
                if init is not None:
                    self._expr(init, ctx)
                ctx.scopes[-1][name] = ty
        elif isinstance(s, t.ExprStmt):
            self._expr(s.expr, ctx)
        elif isinstance(s, (t.Return, t.Throw)):
            if s.expr is not None:
                self._expr(s.expr, ctx)
        elif isinstance(s, t.If):
            self._expr(s.cond, ctx)
            self._nested(s.then, ctx)
            if s.orelse is not None:
                self._nested(s.orelse, ctx)
        elif isinstance(s, t.While):
            self._expr(s.cond, ctx)
            self._nested(s.body, ctx)
        elif isinstance(s, t.For):
            ctx.scopes.append({})
            for init in s.init:
                self._stmt(init, ctx)
            if s.cond is not None:
                self._expr(s.cond, ctx)
            for update in s.update:
                self._expr(update, ctx)
            self._nested(s.body, ctx)
            ctx.scopes.pop()
        elif isinstance(s, t.ForEach):
            self._expr(s.iterable, ctx)
            ctx.scopes.append({s.name: self._resolve_type(s.type, ctx)})
            self._nested(s.body, ctx)
            ctx.scopes.pop()
        elif isinstance(s, t.Jump):
            pass
        else:  # pragma: no cover
            raise TypeError(f"unexpected statement {s!r}")

    def _nested(self, s, ctx: _Ctx):
        ctx.scopes.append({})
        self._stmt(s, ctx)
        ctx.scopes.pop()

    # -- expressions ---------------------------------------------------------

    def _value(self, e, ctx: _Ctx) -> Ty:
        r = self._expr(e, ctx)
        return r.ty if isinstance(r, (_Value, _TypeName)) else UNKNOWN

    def _expr(self, e, ctx: _Ctx):
        if isinstance(e, t.Literal):
            return _Value(UNKNOWN)
        if isinstance(e, t.Name):
            return self._name(e, ctx)
        if isinstance(e, t.This):
            return _Value(Ty(ctx.info.id))
        if isinstance(e, t.Super):
            return _Value(Ty(ctx.info.superclass))
        if isinstance(e, t.FieldAccess):
            return self._field_access(e, ctx)
        if isinstance(e, t.MethodCall):
            return _Value(self._call(e, ctx))
        if isinstance(e, t.ConstructorCall):
            for arg in e.args:
                self._expr(arg, ctx)
            owner = ctx.info.id if e.keyword == "this" else ctx.info.superclass
            info = self.types.get(owner)
            if info is not None and len(e.args) in info.ctors:
                self._use(ctx, info.ctors[len(e.args)].id, e.loc)
            return _Value(UNKNOWN)
        if isinstance(e, t.New):
            ty = self._resolve_type(e.type, ctx)
            for arg in e.args:
                self._expr(arg, ctx)
            info = self.types.get(ty.id)
            if info is not None and len(e.args) in info.ctors:
                self._use(ctx, info.ctors[len(e.args)].id, e.type.loc)
            return _Value(ty)
        if isinstance(e, t.NewArray):
            ty = self._resolve_type(e.type, ctx)
            for size in e.sizes:
                self._expr(size, ctx)
            if e.init is not None:
                self._expr(e.init, ctx)
            return _Value(ty)
        if isinstance(e, t.ArrayInit):
            for element in e.elements:
                self._expr(element, ctx)
            return _Value(UNKNOWN)
        if isinstance(e, t.Index):
            ty = self._value(e.target, ctx)
            self._expr(e.index, ctx)
            return _Value(Ty(ty.id, ty.dims - 1) if ty.dims else UNKNOWN)
        if isinstance(e, t.Unary):
            self._expr(e.operand, ctx)
            return _Value(UNKNOWN)
        if isinstance(e, t.Binary):
            self._expr(e.left, ctx)
            self._expr(e.right, ctx)
            return _Value(UNKNOWN)
        if isinstance(e, t.Assign):
            ty = self._value(e.target, ctx)
            self._expr(e.value, ctx)
            return _Value(ty)
        if isinstance(e, t.Conditional):
            self._expr(e.cond, ctx)
            ty = self._value(e.then, ctx)
            self._expr(e.orelse, ctx)
            return _Value(ty)
        if isinstance(e, t.Cast):
            ty = self._resolve_type(e.type, ctx)
            self._expr(e.expr, ctx)
            return _Value(ty)
        if isinstance(e, t.InstanceOf):
            self._expr(e.expr, ctx)
            self._resolve_type(e.type, ctx)
            return _Value(UNKNOWN)
        raise TypeError(f"unexpected expression {e!r}")  # pragma: no cover

    def _name(self, e: t.Name, ctx: _Ctx):
        ty = ctx.lookup_local(e.name)
        if ty is not None:
            return _Value(ty)
        member = self._find_field(ctx.info.id, e.name)
        if member is not None:
            self._use(ctx, member.id, e.loc)
            return _Value(member.ty)
        local = _qualify(ctx.info.package, e.name)
        imported = any(q.parts[-1] == e.name for q in ctx.unit.imports)
        if local in self.types or imported:
            return _TypeName(self._type_name(e.name, ctx, e.loc))
        if e.name in self.packages:
            return _Package(e.name)
        if e.name[:1].islower() and self._unresolved_owner(ctx.info.id) is not None:
            # most likely a field inherited from a type outside the sources
            self._use(ctx, self._fallback_member(ctx.info.id, e.name), e.loc)
            return _Value(UNKNOWN)
        return _TypeName(self._type_name(e.name, ctx, e.loc))

    def _type_name(self, simple: str, ctx: _Ctx, loc) -> Ty:
        entity = self._lookup_type(simple, ctx, loc)
        if entity is None:
            return UNKNOWN
        self._use(ctx, entity, loc)
        return Ty(entity)

    def _field_access(self, e: t.FieldAccess, ctx: _Ctx):
        target = self._expr(e.target, ctx)
        if isinstance(target, _Package):
            qualified = f"{target.name}.{e.name}"
            if qualified in self.types:
                self._use(ctx, qualified, e.loc)
                return _TypeName(Ty(qualified))
            if qualified in self.packages:
                return _Package(qualified)
            self._use(ctx, self._external(qualified), e.loc)
            return _TypeName(Ty(qualified))
        ty = target.ty
        if ty.dims:
            return _Value(UNKNOWN)  # array length
        return _Value(self._member_access(ty.id, e.name, e.loc, ctx))

    def _call(self, e: t.MethodCall, ctx: _Ctx) -> Ty:
        for arg in e.args:
            self._expr(arg, ctx)
        if e.target is None:
            owner = ctx.info.id
        else:
            target = self._expr(e.target, ctx)
            if isinstance(target, _Package) or target.ty.dims:
                return UNKNOWN
            owner = target.ty.id
        return self._member_access(owner, e.name, e.loc, ctx, arity=len(e.args))


def resolve(units: list[t.CompilationUnit]) -> AccessGraph:
    """Build the access graph of a whole program.

    Units are processed in path order so the result does not depend on the
    order in which files were supplied.
    """
    return Resolver(units).run()
