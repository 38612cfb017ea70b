"""Access graphs: declared entities and the relations between them.

Nodes are declared entities identified by a fully qualified name.  Four
relations hang off them:

* ``uses``             -- a name occurrence of the target inside the source
* ``contains``         -- owner scope to owned entity (a forest)
* ``isA``              -- subtype to supertype (acyclic)
* ``virtual_contains`` -- constraint-defined grouping to member

Closure queries are cached and the cache is dropped on every mutation.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Iterator

from .errors import (
    ContainsCycleOrSecondParent,
    InvalidEdge,
    IsACycle,
    KindConflict,
    SelfUse,
    UnknownEntity,
)

_ID_RE = re.compile(r"^[^\s()]+(\([^\s()]*\))?$")


class EntityKind(str, Enum):
    PACKAGE = "package"
    CLASS = "class"
    INTERFACE = "interface"
    METHOD = "method"
    CONSTRUCTOR = "constructor"
    FIELD = "field"
    VIRTUAL = "virtual"
    UNRESOLVED = "unresolved"

    def __str__(self) -> str:
        return self.value


class Relation(str, Enum):
    USES = "uses"
    CONTAINS = "contains"
    ISA = "isA"
    VIRTUAL_CONTAINS = "virtual_contains"


def strip_params(entity_id: str) -> str:
    """``p.A.m(int)`` -> ``p.A.m``."""
    paren = entity_id.find("(")
    return entity_id if paren < 0 else entity_id[:paren]


def display_name(entity_id: str) -> str:
    return strip_params(entity_id).rsplit(".", 1)[-1]


def check_entity_id(entity_id: str) -> str:
    if not entity_id or not _ID_RE.match(entity_id):
        raise ValueError(f"malformed entity id {entity_id!r}")
    return entity_id


@dataclass(frozen=True, order=True)
class SourceLocation:
    file: str
    line: int
    column: int = 1

    def __post_init__(self):
        if self.line < 1 or self.column < 1:
            raise ValueError(f"invalid source position {self.line}:{self.column}")

    def __str__(self) -> str:
        return f"{self.file}:{self.line}"


@dataclass(frozen=True)
class EntityNode:
    id: str
    kind: EntityKind
    decl_location: SourceLocation | None = field(default=None, compare=False)

    def __post_init__(self):
        check_entity_id(self.id)
        object.__setattr__(self, "kind", EntityKind(self.kind))

    @property
    def display_name(self) -> str:
        return display_name(self.id)


@dataclass
class UsesEdge:
    src: str
    tgt: str
    occurrences: list[SourceLocation] = field(default_factory=list)

    @property
    def key(self) -> tuple[str, str]:
        return (self.src, self.tgt)


class AccessGraph:
    """Mutable while being built; treat as read-only once handed to a checker."""

    def __init__(self):
        self.nodes: dict[str, EntityNode] = {}
        self._uses: dict[tuple[str, str], UsesEdge] = {}
        self._parent: dict[str, str] = {}
        self._children: dict[str, set[str]] = {}
        self._supers: dict[str, set[str]] = {}
        self._subs: dict[str, set[str]] = {}
        self._members: dict[str, set[str]] = {}
        self._cache: dict[tuple[str, str], object] = {}

    # -- construction --------------------------------------------------------

    def add_node(self, node: EntityNode | str, kind: EntityKind | str | None = None,
                 decl_location: SourceLocation | None = None) -> AccessGraph:
        if isinstance(node, str):
            node = EntityNode(node, EntityKind(kind), decl_location)
        existing = self.nodes.get(node.id)
        if existing is not None:
            if existing.kind != node.kind:
                raise KindConflict(node.id, existing.kind.value, node.kind.value)
            return self
        self.nodes[node.id] = node
        self._cache.clear()
        return self

    def add_edge(self, rel: Relation | str, a: str, b: str,
                 loc: SourceLocation | None = None) -> AccessGraph:
        rel = Relation(rel)
        for end in (a, b):
            if end not in self.nodes:
                raise UnknownEntity(end)
        ka, kb = self.nodes[a].kind, self.nodes[b].kind

        if rel is Relation.VIRTUAL_CONTAINS:
            if ka is not EntityKind.VIRTUAL or kb is EntityKind.VIRTUAL:
                raise InvalidEdge(f"virtual_contains({a}, {b}) needs a virtual source "
                                  "and a non-virtual member")
            self._members.setdefault(a, set()).add(b)
        elif EntityKind.VIRTUAL in (ka, kb):
            raise InvalidEdge(f"virtual scopes only take part in virtual_contains ({rel.value})")
        elif rel is Relation.USES:
            if a == b:
                raise SelfUse(a)
            if ka is EntityKind.UNRESOLVED:
                raise InvalidEdge(f"unresolved entity {a!r} cannot use anything")
            edge = self._uses.get((a, b))
            if edge is None:
                edge = self._uses[(a, b)] = UsesEdge(a, b)
            if loc is not None:
                edge.occurrences.append(loc)
        elif rel is Relation.CONTAINS:
            current = self._parent.get(b)
            if current == a:
                return self
            if current is not None:
                raise ContainsCycleOrSecondParent(
                    f"{b!r} is already contained in {current!r}; cannot add {a!r}")
            if a == b or b in self._ancestor_chain(a):
                raise ContainsCycleOrSecondParent(f"contains({a}, {b}) closes a cycle")
            self._parent[b] = a
            self._children.setdefault(a, set()).add(b)
        else:
            if a == b or a in self._reach(b, self._supers):
                raise IsACycle(f"isA({a}, {b}) closes a cycle")
            self._supers.setdefault(a, set()).add(b)
            self._subs.setdefault(b, set()).add(a)
        self._cache.clear()
        return self

    def copy(self) -> AccessGraph:
        other = AccessGraph()
        other.nodes = dict(self.nodes)
        other._uses = {k: UsesEdge(e.src, e.tgt, list(e.occurrences))
                       for k, e in self._uses.items()}
        other._parent = dict(self._parent)
        other._children = {k: set(v) for k, v in self._children.items()}
        other._supers = {k: set(v) for k, v in self._supers.items()}
        other._subs = {k: set(v) for k, v in self._subs.items()}
        other._members = {k: set(v) for k, v in self._members.items()}
        return other

    # -- plain accessors -----------------------------------------------------

    def __contains__(self, entity: str) -> bool:
        return entity in self.nodes

    def __len__(self) -> int:
        return len(self.nodes)

    def kind(self, entity: str) -> EntityKind:
        return self._node(entity).kind

    def parent(self, entity: str) -> str | None:
        self._node(entity)
        return self._parent.get(entity)

    def children(self, entity: str) -> set[str]:
        return set(self._children.get(entity, ()))

    def members(self, scope: str) -> set[str]:
        """Direct virtual_contains members of a virtual scope."""
        return set(self._members.get(scope, ()))

    def supertypes(self, entity: str) -> set[str]:
        return set(self._supers.get(entity, ()))

    def uses_edge(self, src: str, tgt: str) -> UsesEdge | None:
        return self._uses.get((src, tgt))

    @property
    def uses(self) -> list[UsesEdge]:
        return [self._uses[k] for k in sorted(self._uses)]

    @property
    def contains(self) -> set[tuple[str, str]]:
        return {(p, c) for c, p in self._parent.items()}

    @property
    def isa(self) -> set[tuple[str, str]]:
        return {(s, t) for s, ts in self._supers.items() for t in ts}

    @property
    def virtual_contains(self) -> set[tuple[str, str]]:
        return {(v, m) for v, ms in self._members.items() for m in ms}

    def roots(self) -> list[str]:
        """Roots of the contains forest (virtual scopes included)."""
        return sorted(n for n in self.nodes if n not in self._parent)

    def summary(self) -> dict[str, int]:
        return {
            "nodes": len(self.nodes),
            "uses": len(self._uses),
            "contains": len(self._parent),
            "isA": sum(len(v) for v in self._supers.values()),
            "virtual_contains": sum(len(v) for v in self._members.values()),
        }

    # -- closure queries -----------------------------------------------------

    def contains_star(self, entity: str) -> frozenset[str]:
        """The entity plus every transitive contains descendant."""
        self._node(entity)
        return self._cached("contains*", entity,
                            lambda: frozenset(self._reach(entity, self._children)))

    def g_contains_star(self, entity: str) -> frozenset[str]:
        """Like :meth:`contains_star` but also descends through virtual_contains."""
        self._node(entity)

        def compute():
            out = set(self.contains_star(entity))
            for member in self._members.get(entity, ()):
                out |= self.contains_star(member)
            return frozenset(out)

        return self._cached("gcontains*", entity, compute)

    def ancestors(self, entity: str) -> list[str]:
        """``[entity, parent, grandparent, ...]`` along contains only."""
        self._node(entity)
        return list(self._cached("ancestors", entity,
                                 lambda: tuple(self._ancestor_chain(entity))))

    def depends_on(self, c: str, e: str) -> bool:
        """True iff something inside c's declaration scope uses e."""
        self._node(e)
        return any((d, e) in self._uses for d in self.contains_star(c))

    def isa_star(self, entity: str) -> frozenset[str]:
        """The type plus all its transitive subtypes."""
        self._node(entity)
        return self._cached("isa*", entity,
                            lambda: frozenset(self._reach(entity, self._subs)))

    def supertypes_star(self, entity: str) -> list[str]:
        """Breadth-first walk up isA, nearest supertypes first, sorted per level."""
        self._node(entity)
        seen, order = {entity}, [entity]
        frontier = [entity]
        while frontier:
            nxt = []
            for t in frontier:
                for s in sorted(self._supers.get(t, ())):
                    if s not in seen:
                        seen.add(s)
                        order.append(s)
                        nxt.append(s)
            frontier = nxt
        return order

    # -- helpers -------------------------------------------------------------

    def _node(self, entity: str) -> EntityNode:
        try:
            return self.nodes[entity]
        except KeyError:
            raise UnknownEntity(entity) from None

    def _cached(self, query: str, entity: str, compute):
        key = (query, entity)
        if key not in self._cache:
            self._cache[key] = compute()
        return self._cache[key]

    def _ancestor_chain(self, entity: str) -> Iterator[str]:
        while entity is not None:
            yield entity
            entity = self._parent.get(entity)

    @staticmethod
    def _reach(start: str, succ: dict[str, set[str]]) -> set[str]:
        seen = {start}
        queue = deque([start])
        while queue:
            for nxt in succ.get(queue.popleft(), ()):
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
        return seen


def build_graph(nodes: Iterable[tuple[str, str]], **relations) -> AccessGraph:
    """Convenience constructor: ``build_graph([(id, kind)...], contains=[(a, b)...])``."""
    g = AccessGraph()
    for entity, kind in nodes:
        g.add_node(entity, kind)
    for rel_name, pairs in relations.items():
        rel = Relation.ISA if rel_name == "isa" else Relation(rel_name)
        for pair in pairs:
            g.add_edge(rel, *pair)
    return g
