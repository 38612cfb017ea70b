"""JavaLite frontend: parse a small Java subset and extract its access graph."""

from __future__ import annotations

from pathlib import Path

from ..graph import AccessGraph
from .parser import parse_file, parse_source
from .resolver import resolve

SOURCE_SUFFIXES = (".jl", ".java")


def extract(files) -> AccessGraph:
    """``(path, text)`` pairs -> access graph."""
    return resolve(parse_source(files))


def collect_sources(paths) -> list[tuple[str, str]]:
    """Expand files and directories into ``(path, text)`` pairs, sorted by path."""
    found: list[Path] = []
    for p in map(Path, paths):
        if p.is_dir():
            found.extend(f for f in p.rglob("*") if f.is_file() and f.suffix in SOURCE_SUFFIXES)
        else:
            found.append(p)
    return [(str(f), f.read_text(encoding="utf-8")) for f in sorted(set(found))]


__all__ = ["extract", "collect_sources", "parse_file", "parse_source", "resolve"]
