"""Text, JSON and DOT renderings of check results."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .evaluate import Violation, resolve_ref
from .graph import AccessGraph, EntityKind, display_name

SHAPES = {
    EntityKind.PACKAGE: "box",
    EntityKind.CLASS: "box",
    EntityKind.INTERFACE: "box",
    EntityKind.METHOD: "diamond",
    EntityKind.CONSTRUCTOR: "diamond",
    EntityKind.FIELD: "ellipse",
    EntityKind.VIRTUAL: "box",
    EntityKind.UNRESOLVED: "plaintext",
}
VIOLATION_COLOR = "red"

_RED, _RESET = "\x1b[31m", "\x1b[0m"


@dataclass
class CheckReport:
    graph_summary: dict[str, int]
    violations: list[Violation] = field(default_factory=list)
    constraint_file: str | None = None

    @classmethod
    def build(cls, g: AccessGraph, violations, constraint_file=None) -> CheckReport:
        return cls(g.summary(), list(violations), constraint_file)

    @property
    def exit_status(self) -> int:
        return 1 if self.violations else 0

    def clause_origin(self, v: Violation) -> str:
        if self.constraint_file:
            return f"{self.constraint_file}:{v.clause.line}"
        return f"line {v.clause.line}"


def render_text(report: CheckReport, color: bool = False) -> str:
    tag = f"{_RED}VIOLATION{_RESET}" if color else "VIOLATION"
    lines = []
    for v in report.violations:
        line = f"{tag} {v.src} -> {v.tgt} [{v.clause.to_text()} @ {report.clause_origin(v)}]"
        if v.occurrences:
            line += " at " + ",".join(str(o) for o in v.occurrences)
        lines.append(line)
    lines.append(f"{len(report.violations)} violation(s)")
    return "\n".join(lines) + "\n"


def render_structured(report: CheckReport) -> str:
    doc = {
        "summary": {
            **report.graph_summary,
            "constraint_file": report.constraint_file,
            "violations": len(report.violations),
            "exit_status": report.exit_status,
        },
        "violations": [
            {
                "src": v.src,
                "tgt": v.tgt,
                "viewer": v.judged_viewer,
                "clause_text": v.clause.to_text(),
                "clause_line": v.clause.line,
                "occurrences": [{"file": o.file, "line": o.line} for o in v.occurrences],
            }
            for v in report.violations
        ],
    }
    return json.dumps(doc, indent=2) + "\n"


def _q(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def render_dot(g: AccessGraph, report: CheckReport | None = None,
               filter: str | None = None, violation_color: str = VIOLATION_COLOR) -> str:
    """DOT digraph: uses edges solid, contains dashed, violating uses edges colored.

    With ``filter`` only the filtered scope and the entities that use it or are
    used by it are drawn; entities outside the analysed sources are left out
    of that partial view.
    """
    red = {(v.src, v.tgt) for v in report.violations} if report else set()
    uses = g.uses
    if filter is None:
        shown = set(g.nodes)
    else:
        scope = g.g_contains_star(resolve_ref(g, filter))
        shown = set(scope)
        for e in uses:
            for inside, other in ((e.src, e.tgt), (e.tgt, e.src)):
                if inside in scope and g.kind(other) is not EntityKind.UNRESOLVED:
                    shown.add(other)
        uses = [e for e in uses if (e.src in scope or e.tgt in scope)
                and e.src in shown and e.tgt in shown]

    out = ["digraph access_graph {", "  node [fontname=\"Helvetica\"];"]
    for entity in sorted(shown):
        kind = g.kind(entity)
        attrs = [f"label={_q(display_name(entity))}", f"shape={SHAPES[kind]}"]
        if kind is EntityKind.VIRTUAL:
            attrs.append("style=dotted")
        out.append(f"  {_q(entity)} [{', '.join(attrs)}];")
    for parent, child in sorted(g.contains):
        if parent in shown and child in shown:
            out.append(f"  {_q(parent)} -> {_q(child)} [style=dashed, arrowhead=none];")
    for scope_id, member in sorted(g.virtual_contains):
        if scope_id in shown and member in shown:
            out.append(f"  {_q(scope_id)} -> {_q(member)} [style=dotted, arrowhead=none];")
    for e in uses:
        attrs = f" [color={violation_color}]" if (e.src, e.tgt) in red else ""
        out.append(f"  {_q(e.src)} -> {_q(e.tgt)}{attrs};")
    out.append("}")
    return "\n".join(out) + "\n"
