"""First-order semantics of constraint programs over an access graph.

Every clause is compiled into hideFrom rules that are tested on demand for a
(target, viewer) pair; the full hideFrom relation is never materialized.
A uses edge (a, b) is a violation when hiddenFrom(b, a) follows, where::

    hideFrom(b, a) and not canSee(a, b)  =>  hiddenFrom(b, a)

Scope-family clauses (hideScope and its variants, hideSet, layers) are judged
at the edge source.  A raw ``hideFrom(b, a)`` additionally covers everything
declared inside ``a``, so edges are also judged at the contains-ancestors of
their source against raw facts.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .constraints import ConstraintClause, ConstraintProgram
from .errors import AmbiguousName, DuplicateScopeName, UnknownName
from .graph import AccessGraph, EntityKind, Relation, SourceLocation, UsesEdge, strip_params


@dataclass
class Violation:
    edge: UsesEdge
    judged_viewer: str
    clause: ConstraintClause

    @property
    def src(self) -> str:
        return self.edge.src

    @property
    def tgt(self) -> str:
        return self.edge.tgt

    @property
    def occurrences(self) -> list[SourceLocation]:
        return sorted(self.edge.occurrences)


def resolve_ref(g: AccessGraph, ref: str) -> str:
    """Bind a constraint-side name to an entity id.

    An exact id wins.  Otherwise the ref must be a unique dot-suffix of an
    id; parameter lists are ignored when the ref carries none, so
    ``'Bitstream.create'`` matches ``org.dspace.content.Bitstream.create(Context)``.
    """
    if ref in g.nodes:
        return ref
    keyed = "(" not in ref
    tail = "." + ref
    hits = []
    for entity in g.nodes:
        key = strip_params(entity) if keyed else entity
        if key == ref or key.endswith(tail):
            hits.append(entity)
    if not hits:
        raise UnknownName(ref)
    if len(hits) > 1:
        raise AmbiguousName(ref, hits)
    return hits[0]


def _hit(anchors: frozenset[str], chain) -> bool:
    return not anchors.isdisjoint(chain)


@dataclass(frozen=True)
class _ScopeRule:
    """hideScope(scope, facades, interlopers, friends) over anchor sets.

    An anchor set stands for the union of gContains* of its elements: a node
    lies inside it iff one of the node's contains-ancestors is an anchor.
    """
    clause: ConstraintClause
    scope: frozenset[str]
    facades: frozenset[str]
    interlopers: frozenset[str]
    friends: frozenset[str]
    # hideSet only: owners of the set's elements and everything above them
    owners: frozenset[str] = frozenset()
    owner_ancestors: frozenset[str] = frozenset()

    raw = False

    def holds(self, g: AccessGraph, target: str, viewer: str) -> bool:
        t_chain = g.ancestors(target)
        if not _hit(self.scope, t_chain) or _hit(self.facades, t_chain):
            return False
        v_chain = g.ancestors(viewer)
        if not _hit(self.interlopers, v_chain) or _hit(self.friends, v_chain):
            return False
        if _hit(self.scope, v_chain):
            return False
        if viewer in self.owner_ancestors or _hit(self.owners, v_chain):
            return False
        return True


@dataclass(frozen=True)
class _RawRule:
    clause: ConstraintClause
    target: str
    viewer: str

    raw = True

    def holds(self, g: AccessGraph, target: str, viewer: str) -> bool:
        return target == self.target and viewer == self.viewer


@dataclass(frozen=True)
class _CanSee:
    clause: ConstraintClause
    viewers: frozenset[str]
    target: str


@dataclass
class BoundProgram:
    program: ConstraintProgram
    graph: AccessGraph
    bindings: dict[str, str] = field(default_factory=dict)
    rules: list = field(default_factory=list)
    exceptions: list[_CanSee] = field(default_factory=list)


def bind_refs(program: ConstraintProgram, g: AccessGraph) -> BoundProgram:
    """Resolve every name in ``program`` and materialize its virtual scopes.

    ``g`` is left untouched; the bound program carries a working copy that
    also holds the virtual nodes.
    """
    work = g.copy()
    bound = BoundProgram(program, work)

    for c in program:
        if c.defines_scope:
            name = c.args[0]
            if name in work.nodes:
                raise DuplicateScopeName(name, c.line)
            work.add_node(name, EntityKind.VIRTUAL)
            bound.bindings[name] = name
    for c in program:
        if c.defines_scope:
            for ref in c.args[1]:
                member = _bind(bound, g, ref, c)
                work.add_edge(Relation.VIRTUAL_CONTAINS, c.args[0], member)

    roots = None
    for c in program:
        if c.defines_scope:
            continue
        ids = [tuple(_bind(bound, work, r, c) for r in a) if isinstance(a, tuple)
               else _bind(bound, work, a, c) for a in c.args]
        kind = c.kind
        if kind == "hideFrom":
            bound.rules.append(_RawRule(c, ids[0], ids[1]))
            continue
        if kind == "canSee":
            bound.exceptions.append(_CanSee(c, _anchors(work, [ids[0]]), ids[1]))
            continue
        if roots is None:
            roots = _anchors(work, work.roots())
        if kind == "layers":
            layers = ids[0]
            bound.rules.append(_scope_rule(work, c, layers[0], (), _anchors(work, layers[1:]), ()))
            for above, layer in zip(layers, layers[1:]):
                bound.rules.append(_scope_rule(work, c, layer, (), roots, (above,)))
        elif kind == "hideScope":
            bound.rules.append(_scope_rule(work, c, ids[0], (), roots, ()))
        elif kind == "hideScope4":
            bound.rules.append(_scope_rule(work, c, ids[0], ids[1],
                                           _anchors(work, ids[2]), ids[3]))
        elif kind == "hideScopeBut":
            bound.rules.append(_scope_rule(work, c, ids[0], ids[1], roots, ()))
        elif kind == "hideScopeFrom":
            bound.rules.append(_scope_rule(work, c, ids[0], (), _anchors(work, ids[1]), ()))
        elif kind == "hideScopeButFrom":
            bound.rules.append(_scope_rule(work, c, ids[0], (), roots, ids[1]))
        elif kind == "hideSet":
            bound.rules.append(_hide_set_rule(work, c, ids[0], roots))
        else:  # pragma: no cover - parse_constraints rejects anything else
            raise AssertionError(kind)
    return bound


def _bind(bound: BoundProgram, g: AccessGraph, ref: str, c: ConstraintClause) -> str:
    try:
        entity = resolve_ref(g, ref)
    except UnknownName:
        raise UnknownName(ref, c) from None
    bound.bindings.setdefault(ref, entity)
    return entity


def _anchors(g: AccessGraph, ids) -> frozenset[str]:
    out = set(ids)
    for entity in ids:
        out |= g.members(entity)
    return frozenset(out)


def _scope_rule(g, c, scope, facades, interlopers, friends) -> _ScopeRule:
    return _ScopeRule(c, _anchors(g, [scope]), _anchors(g, facades),
                      frozenset(interlopers), _anchors(g, friends))


def _hide_set_rule(g: AccessGraph, c, hidden: str, roots) -> _ScopeRule:
    elements = g.members(hidden) if g.kind(hidden) is EntityKind.VIRTUAL else {hidden}
    owners = {g.parent(e) for e in elements} - {None}
    above = set()
    for owner in owners:
        above.update(g.ancestors(owner))
    base = _scope_rule(g, c, hidden, (), roots, ())
    return _ScopeRule(c, base.scope, base.facades, base.interlopers, base.friends,
                      frozenset(owners), frozenset(above))


def hide_from_holds(bound: BoundProgram, target: str, viewer: str,
                    *, raw_only: bool = False) -> ConstraintClause | None:
    """First clause (file order) whose expansion yields hideFrom(target, viewer)."""
    g = bound.graph
    for rule in bound.rules:
        if raw_only and not rule.raw:
            continue
        if rule.holds(g, target, viewer):
            return rule.clause
    return None


def can_see(bound: BoundProgram, viewer: str, target: str) -> ConstraintClause | None:
    chain = None
    for exc in bound.exceptions:
        if exc.target != target:
            continue
        if chain is None:
            chain = bound.graph.ancestors(viewer)
        if _hit(exc.viewers, chain):
            return exc.clause
    return None


def hidden_from(bound: BoundProgram, target: str, viewer: str,
                *, raw_only: bool = False) -> ConstraintClause | None:
    clause = hide_from_holds(bound, target, viewer, raw_only=raw_only)
    if clause is None or can_see(bound, viewer, target) is not None:
        return None
    return clause


def check(bound: BoundProgram) -> list[Violation]:
    """All uses edges of the bound graph that the program forbids, sorted by (src, tgt)."""
    g = bound.graph
    found = []
    for edge in g.uses:
        for depth, viewer in enumerate(g.ancestors(edge.src)):
            clause = hidden_from(bound, edge.tgt, viewer, raw_only=depth > 0)
            if clause is not None:
                found.append(Violation(edge, viewer, clause))
                break
    return found


def check_graph(g: AccessGraph, program: ConstraintProgram) -> list[Violation]:
    return check(bind_refs(program, g))
