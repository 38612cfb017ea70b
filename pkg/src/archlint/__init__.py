"""Check explicit coupling constraints against the access graph of a program."""

from .constraints import ConstraintClause, ConstraintProgram, parse_constraints
from .evaluate import BoundProgram, Violation, bind_refs, check, check_graph, hidden_from
from .facts import emit_facts, parse_facts
from .graph import AccessGraph, EntityKind, EntityNode, Relation, SourceLocation, UsesEdge

__version__ = "0.1.0"

__all__ = [
    "AccessGraph", "EntityKind", "EntityNode", "Relation", "SourceLocation", "UsesEdge",
    "ConstraintClause", "ConstraintProgram", "parse_constraints",
    "BoundProgram", "Violation", "bind_refs", "check", "check_graph", "hidden_from",
    "emit_facts", "parse_facts",
]
