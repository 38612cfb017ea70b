"""Tokenizer and reader for the fact-style clause notation.

Both facts files and constraint files are sequences of clauses::

    functor(arg, arg, ...).

where an argument is a single-quoted atom (``'p.A'``, ``\\'`` escapes a
quote), a bare lowercase identifier, a non-negative integer, or a bracketed
list of quoted atoms.  ``%`` starts a comment that runs to the end of the line.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

_TOKEN_RE = re.compile(r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<comment>%[^\n]*)
  | (?P<atom>'(?:\\.|[^'\\\n])*')
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<int>[0-9]+)
  | (?P<punct>[()\[\],.])
""", re.VERBOSE)

_UNESCAPE_RE = re.compile(r"\\(.)")


class TermSyntaxError(Exception):
    def __init__(self, line: int, column: int, reason: str):
        super().__init__(f"{line}:{column}: {reason}")
        self.line = line
        self.column = column
        self.reason = reason


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


@dataclass(frozen=True)
class Atom:
    value: str


@dataclass(frozen=True)
class Ident:
    value: str


@dataclass(frozen=True)
class AtomList:
    values: tuple[str, ...]


@dataclass(frozen=True)
class Term:
    functor: str
    args: tuple
    line: int
    column: int

    @property
    def arity(self) -> int:
        return len(self.args)


def quote(value: str) -> str:
    return "'" + value.replace("\\", "\\\\").replace("'", "\\'") + "'"


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise TermSyntaxError(line, pos - line_start + 1,
                                  f"unexpected character {text[pos]!r}")
        kind = m.lastgroup
        if kind not in ("ws", "comment"):
            tokens.append(Token(kind, m.group(), line, pos - line_start + 1))
        newlines = m.group().count("\n")
        if newlines:
            line += newlines
            line_start = m.start() + m.group().rfind("\n") + 1
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


class _Reader:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def expect(self, text: str) -> Token:
        tok = self.tok
        if tok.text != text or tok.kind != "punct":
            raise TermSyntaxError(tok.line, tok.column,
                                  f"expected {text!r}, found {tok.text or 'end of input'!r}")
        self.i += 1
        return tok

    def clause(self) -> Term:
        head = self.tok
        if head.kind != "ident":
            raise TermSyntaxError(head.line, head.column,
                                  f"expected a predicate name, found {head.text or 'end of input'!r}")
        self.i += 1
        self.expect("(")
        args = [self.arg()]
        while self.tok.text == ",":
            self.i += 1
            args.append(self.arg())
        self.expect(")")
        self.expect(".")
        return Term(head.text, tuple(args), head.line, head.column)

    def arg(self):
        tok = self.tok
        if tok.kind == "atom":
            self.i += 1
            return Atom(_UNESCAPE_RE.sub(r"\1", tok.text[1:-1]))
        if tok.kind == "ident":
            self.i += 1
            return Ident(tok.text)
        if tok.kind == "int":
            self.i += 1
            return int(tok.text)
        if tok.text == "[":
            self.i += 1
            values = []
            if self.tok.text != "]":
                values.append(self._list_atom())
                while self.tok.text == ",":
                    self.i += 1
                    values.append(self._list_atom())
            self.expect("]")
            return AtomList(tuple(values))
        raise TermSyntaxError(tok.line, tok.column,
                              f"expected an argument, found {tok.text or 'end of input'!r}")

    def _list_atom(self) -> str:
        tok = self.tok
        if tok.kind != "atom":
            raise TermSyntaxError(tok.line, tok.column,
                                  f"list elements must be quoted atoms, found {tok.text!r}")
        self.i += 1
        return _UNESCAPE_RE.sub(r"\1", tok.text[1:-1])


def read_terms(text: str) -> list[Term]:
    reader = _Reader(tokenize(text))
    terms = []
    while reader.tok.kind != "eof":
        terms.append(reader.clause())
    return terms
