"""Seeded generators for random access graphs and constraint programs."""

from __future__ import annotations

import random

from archlint.constraints import ConstraintProgram, clause
from archlint.graph import AccessGraph, EntityKind, Relation, SourceLocation

CLAUSE_FORMS = ("hideFrom", "canSee", "hideScope", "hideScope4", "hideScopeBut",
                "hideScopeFrom", "hideScopeButFrom", "virtualScope", "declareSet",
                "hideSet", "layers")

_CHILD_KINDS = {
    None: (EntityKind.PACKAGE, EntityKind.CLASS, EntityKind.INTERFACE),
    EntityKind.PACKAGE: (EntityKind.PACKAGE, EntityKind.CLASS, EntityKind.INTERFACE),
    EntityKind.CLASS: (EntityKind.METHOD, EntityKind.FIELD, EntityKind.CONSTRUCTOR),
    EntityKind.INTERFACE: (EntityKind.METHOD,),
}


def random_graph(rng: random.Random, max_nodes: int = 30, with_locations: bool = False) -> AccessGraph:
    g = AccessGraph()
    n = rng.randint(1, max_nodes)
    scopes: list[str] = []
    for i in range(n):
        if rng.random() < 0.08:
            g.add_node(f"ext{i}", EntityKind.UNRESOLVED)
            continue
        parent = rng.choice(scopes) if scopes and rng.random() < 0.85 else None
        pkind = g.kind(parent) if parent else None
        kind = rng.choice(_CHILD_KINDS[pkind])
        prefix = parent + "." if parent else ""
        if kind is EntityKind.METHOD:
            params = ",".join(rng.choice(("int", "String", "T[]")) for _ in range(rng.randint(0, 2)))
            entity = f"{prefix}m{i}({params})"
        elif kind is EntityKind.CONSTRUCTOR:
            entity = f"{prefix}{parent.rsplit('.', 1)[-1]}({'int,' * (i % 2)}int)"
            if entity in g.nodes:
                continue
        elif kind is EntityKind.FIELD:
            entity = f"{prefix}f{i}"
        else:
            entity = f"{prefix}{'p' if kind is EntityKind.PACKAGE else 'C'}{i}"
        g.add_node(entity, kind)
        if parent:
            g.add_edge(Relation.CONTAINS, parent, entity)
        if kind in _CHILD_KINDS:
            scopes.append(entity)

    ids = sorted(g.nodes)
    sources = [e for e in ids if g.kind(e) is not EntityKind.UNRESOLVED]
    if len(ids) > 1 and sources:
        for _ in range(rng.randint(0, 2 * len(ids))):
            a, b = rng.choice(sources), rng.choice(ids)
            if a != b:
                loc = None
                if with_locations:
                    loc = SourceLocation(f"F{rng.randint(0, 3)}.jl", rng.randint(1, 50))
                g.add_edge(Relation.USES, a, b, loc)
    types = [e for e in ids if g.kind(e) in (EntityKind.CLASS, EntityKind.INTERFACE)]
    for _ in range(rng.randint(0, len(types))):
        sub, sup = rng.sample(types, 2) if len(types) > 1 else (None, None)
        # orient by id order so the isA relation stays acyclic
        if sub and sub > sup:
            g.add_edge(Relation.ISA, sub, sup)
    return g


def _refs(rng, pool, lo=0, hi=3):
    return tuple(rng.sample(pool, min(len(pool), rng.randint(lo, hi))))


def random_program(rng: random.Random, g: AccessGraph, max_clauses: int = 6,
                   forms=CLAUSE_FORMS) -> ConstraintProgram:
    """Up to ``max_clauses`` clauses; every ref is an exact id or a virtual name."""
    ids = sorted(g.nodes)
    real = [e for e in ids if g.kind(e) is not EntityKind.VIRTUAL]
    edges = [(e.src, e.tgt) for e in g.uses]
    count = rng.randint(0, max_clauses)
    kinds = [rng.choice(forms) for _ in range(count)]
    virtual = [f"V{i}" for i, k in enumerate(kinds) if k in ("virtualScope", "declareSet")]
    pool = ids + virtual

    def pair():
        # bias raw clauses toward pairs that an actual edge can trigger
        if edges and rng.random() < 0.7:
            src, tgt = rng.choice(edges)
            return tgt, rng.choice(g.ancestors(src))
        return rng.choice(pool), rng.choice(pool)

    out = []
    for i, kind in enumerate(kinds):
        if kind in ("virtualScope", "declareSet"):
            out.append(clause(kind, f"V{i}", _refs(rng, real, 0, 4)))
        elif kind == "hideFrom":
            out.append(clause("hideFrom", *pair()))
        elif kind == "canSee":
            target, viewer = pair()
            out.append(clause("canSee", viewer, target))
        elif kind == "hideScope":
            out.append(clause("hideScope", rng.choice(pool)))
        elif kind == "hideScope4":
            out.append(clause("hideScope", rng.choice(pool), _refs(rng, pool),
                              _refs(rng, pool, 1), _refs(rng, pool)))
        elif kind in ("hideScopeBut", "hideScopeFrom", "hideScopeButFrom"):
            out.append(clause(kind, rng.choice(pool), _refs(rng, pool)))
        elif kind == "hideSet":
            out.append(clause("hideSet", rng.choice(virtual) if virtual and rng.random() < 0.7
                              else rng.choice(pool)))
        elif kind == "layers":
            layers = _refs(rng, pool, 2, 4)
            if len(layers) < 2:
                layers = (pool[0], pool[-1]) if pool[0] != pool[-1] else None
            if layers:
                out.append(clause("layers", layers))
    return ConstraintProgram(out)
