"""Access to the on-disk test corpora and their injection variants.

Lines starting with ``//+TAG `` in the miniature corpus are dormant
injections; :func:`dspace_sources` re-activates the ones whose tag is given.
"""

from __future__ import annotations

import re
from pathlib import Path

from archlint.javalite import collect_sources, extract

CORPUS = Path(__file__).parent / "corpus"
IMAGEMGR = CORPUS / "imagemgr"
DSPACE = CORPUS / "dspace_mini"
DSPACE_SRC = DSPACE / "src"

_INJECTION = re.compile(r"^(\s*)//\+(\w+) ", re.M)


def inject(text: str, tags) -> str:
    tags = set(tags)
    return _INJECTION.sub(lambda m: m.group(1) if m.group(2) in tags else m.group(0), text)


def dspace_sources(*tags) -> list[tuple[str, str]]:
    files = collect_sources([str(DSPACE_SRC)])
    root = str(DSPACE_SRC) + "/"
    return [(path.replace(root, ""), inject(text, tags)) for path, text in files]


def dspace_graph(*tags):
    return extract(dspace_sources(*tags))


def write_tree(files, dest: Path) -> Path:
    for rel, text in files:
        target = dest / rel
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(text, encoding="utf-8")
    return dest


def constraints(name: str) -> str:
    return (DSPACE / name).read_text(encoding="utf-8")
