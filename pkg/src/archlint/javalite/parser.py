"""Lexer and recursive-descent parser for JavaLite.

The subset: one optional package declaration, single-type imports, top-level
classes and interfaces (extends/implements, type parameters), fields, methods
and constructors with typed parameters and ``throws`` clauses.  Statements
cover blocks, local declarations, expression statements, return, throw,
if/else, while, classic and enhanced for, break and continue.  Marker
annotations (``@Override``) are skipped.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..errors import ParseError
from ..graph import SourceLocation
from . import tree as t

KEYWORDS = frozenset("""
    package import class interface extends implements
    public private protected static final abstract native synchronized
    transient volatile strictfp default
    void return if else while for new this super throws throw break continue
    null true false instanceof
    int long short byte char boolean float double
""".split())

MODIFIERS = frozenset("""
    public private protected static final abstract native synchronized
    transient volatile strictfp default
""".split())

_OPERATORS = sorted("""
    == != <= >= && || ++ -- += -= *= /= %= &= |= ^=
    ( ) { } [ ] ; , . = < > ! ~ ? : + - * / & | ^ % @
""".split(), key=len, reverse=True)

_TOKEN_RE = re.compile(
    r"(?P<ws>\s+)"
    r"|(?P<comment>//[^\n]*|/\*.*?\*/)"
    r"|(?P<float>\d+\.\d*(?:[eE][+-]?\d+)?[fFdD]?|\d+[fFdD])"
    r"|(?P<int>0[xX][0-9a-fA-F_]+[lL]?|\d[\d_]*[lL]?)"
    r'|(?P<string>"(?:\\.|[^"\\\n])*")'
    r"|(?P<char>'(?:\\.|[^'\\\n])+')"
    r"|(?P<ident>[A-Za-z_$][A-Za-z0-9_$]*)"
    r"|(?P<op>" + "|".join(re.escape(op) for op in _OPERATORS) + ")",
    re.DOTALL,
)

_ASSIGN_OPS = frozenset({"=", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^="})
_BINARY_LEVELS = [
    ("||",), ("&&",), ("|",), ("^",), ("&",), ("==", "!="),
    ("<", ">", "<=", ">="), ("+", "-"), ("*", "/", "%"),
]
_CAST_FOLLOWERS = frozenset({"ident", "int", "float", "string", "char"})


@dataclass(frozen=True)
class Token:
    kind: str  # ident keyword int float string char op eof
    text: str
    line: int
    column: int


def tokenize(path: str, text: str) -> list[Token]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(path, line, pos - line_start + 1, "a token")
        kind, lexeme = m.lastgroup, m.group()
        if kind == "ident" and lexeme in KEYWORDS:
            kind = "keyword"
        if kind not in ("ws", "comment"):
            tokens.append(Token(kind, lexeme, line, pos - line_start + 1))
        newlines = lexeme.count("\n")
        if newlines:
            line += newlines
            line_start = m.start() + lexeme.rfind("\n") + 1
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


class _Backtrack(Exception):
    pass


class Parser:
    def __init__(self, path: str, text: str):
        self.path = path
        self.tokens = tokenize(path, text)
        self.i = 0

    # -- token helpers -------------------------------------------------------

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def peek(self, offset: int = 1) -> Token:
        return self.tokens[min(self.i + offset, len(self.tokens) - 1)]

    def loc(self, tok: Token | None = None) -> SourceLocation:
        tok = tok or self.tok
        return SourceLocation(self.path, tok.line, tok.column)

    def at(self, *texts: str) -> bool:
        return self.tok.kind in ("op", "keyword") and self.tok.text in texts

    def accept(self, text: str) -> bool:
        if self.at(text):
            self.i += 1
            return True
        return False

    def fail(self, expected: str):
        raise ParseError(self.path, self.tok.line, self.tok.column, expected)

    def expect(self, text: str) -> Token:
        if not self.at(text):
            self.fail(repr(text))
        tok = self.tok
        self.i += 1
        return tok

    def ident(self) -> Token:
        if self.tok.kind != "ident":
            self.fail("an identifier")
        tok = self.tok
        self.i += 1
        return tok

    def speculate(self, fn):
        """Run ``fn``; on a parse error rewind and return None."""
        start = self.i
        try:
            return fn()
        except (ParseError, _Backtrack):
            self.i = start
            return None

    # -- compilation units ---------------------------------------------------

    def compilation_unit(self) -> t.CompilationUnit:
        package = None
        self.skip_annotations()
        if self.accept("package"):
            package = self.qualified_name()
            self.expect(";")
        imports = []
        while self.accept("import"):
            if self.at("static"):
                self.fail("a single-type import")
            imports.append(self.qualified_name())
            if self.at("."):
                self.fail("a single-type import")
            self.expect(";")
        types = []
        while self.tok.kind != "eof":
            if self.accept(";"):
                continue
            types.append(self.type_decl())
        return t.CompilationUnit(self.path, package, imports, types)

    def qualified_name(self) -> t.QualifiedName:
        first = self.ident()
        parts = [first.text]
        while self.at(".") and self.peek().kind == "ident":
            self.i += 1
            parts.append(self.ident().text)
        return t.QualifiedName(parts, self.loc(first))

    def skip_annotations(self):
        while self.at("@") and self.peek().kind == "ident":
            self.i += 2

    def modifiers(self) -> frozenset[str]:
        mods = set()
        while True:
            self.skip_annotations()
            if self.tok.kind == "keyword" and self.tok.text in MODIFIERS:
                mods.add(self.tok.text)
                self.i += 1
            else:
                return frozenset(mods)

    def type_decl(self) -> t.TypeDecl:
        mods = self.modifiers()
        if not self.at("class", "interface"):
            self.fail("'class' or 'interface'")
        kind = self.tok.text
        self.i += 1
        name_tok = self.ident()
        type_params = self.type_params() if self.at("<") else []
        extends, implements = [], []
        if self.accept("extends"):
            extends = self.type_list()
            if kind == "class" and len(extends) > 1:
                self.fail("'{' (a class extends at most one type)")
        if kind == "class" and self.accept("implements"):
            implements = self.type_list()
        self.expect("{")
        members = []
        while not self.at("}"):
            if self.tok.kind == "eof":
                self.fail("'}'")
            if self.accept(";"):
                continue
            members.extend(self.member(name_tok.text, kind))
        self.expect("}")
        return t.TypeDecl(name_tok.text, self.loc(name_tok), kind, extends, implements,
                          members, type_params, mods)

    def type_params(self) -> list[t.TypeParam]:
        self.expect("<")
        params = []
        while True:
            name = self.ident()
            bounds = []
            if self.accept("extends"):
                bounds.append(self.type())
                while self.accept("&"):
                    bounds.append(self.type())
            params.append(t.TypeParam(name.text, self.loc(name), bounds))
            if not self.accept(","):
                break
        self.expect(">")
        return params

    def type_list(self) -> list[t.TypeRef]:
        types = [self.type()]
        while self.accept(","):
            types.append(self.type())
        return types

    def member(self, class_name: str, decl_kind: str) -> list:
        mods = self.modifiers()
        type_params = self.type_params() if self.at("<") else []
        if self.tok.kind == "ident" and self.tok.text == class_name and self.peek().text == "(":
            if decl_kind == "interface":
                self.fail("a method or field (interfaces have no constructors)")
            name = self.ident()
            params = self.params()
            throws = self.type_list() if self.accept("throws") else []
            body = self.block()
            return [t.ConstructorDecl(name.text, self.loc(name), params, throws, body,
                                      type_params, mods)]
        if self.accept("void"):
            return_type = None
        else:
            return_type = self.type()
        name = self.ident()
        if self.at("("):
            params = self.params()
            while self.at("["):  # legacy array syntax after the parameter list
                self.expect("[")
                self.expect("]")
                if return_type is not None:
                    return_type.dims += 1
            throws = self.type_list() if self.accept("throws") else []
            body = None if self.accept(";") else self.block()
            return [t.MethodDecl(name.text, self.loc(name), return_type, params, throws,
                                 body, type_params, mods)]
        if type_params or return_type is None:
            self.fail("'('")
        fields = []
        while True:
            ftype = self.dims_after_name(return_type)
            init = self.var_init() if self.accept("=") else None
            fields.append(t.FieldDecl(name.text, self.loc(name), ftype, init, mods))
            if not self.accept(","):
                break
            name = self.ident()
        self.expect(";")
        return fields

    def dims_after_name(self, base: t.TypeRef) -> t.TypeRef:
        extra = 0
        while self.at("[") and self.peek().text == "]":
            self.i += 2
            extra += 1
        if not extra:
            return base
        return t.TypeRef(base.names, base.loc, base.args, base.dims + extra)

    def params(self) -> list[t.Param]:
        self.expect("(")
        params = []
        if not self.at(")"):
            while True:
                self.modifiers()
                ptype = self.type()
                name = self.ident()
                ptype = self.dims_after_name(ptype)
                params.append(t.Param(name.text, ptype, self.loc(name)))
                if not self.accept(","):
                    break
        self.expect(")")
        return params

    # -- types ---------------------------------------------------------------

    def type(self) -> t.TypeRef:
        start = self.tok
        if start.kind == "keyword" and start.text in t.PRIMITIVES:
            self.i += 1
            ref = t.TypeRef([start.text], self.loc(start))
        else:
            qname = self.qualified_name()
            args = self.type_args() if self.at("<") else []
            ref = t.TypeRef(qname.parts, qname.loc, args)
        while self.at("[") and self.peek().text == "]":
            self.i += 2
            ref.dims += 1
        return ref

    def type_args(self) -> list[t.TypeRef]:
        self.expect("<")
        args = []
        if self.accept(">"):  # diamond
            return args
        while True:
            if self.at("?"):
                q = self.tok
                self.i += 1
                bound = []
                if self.accept("extends") or self.accept("super"):
                    bound = [self.type()]
                args.append(t.TypeRef([], self.loc(q), bound))
            else:
                args.append(self.type())
            if not self.accept(","):
                break
        self.expect(">")
        return args

    # -- statements ----------------------------------------------------------

    def block(self) -> t.Block:
        self.expect("{")
        stmts = []
        while not self.at("}"):
            if self.tok.kind == "eof":
                self.fail("'}'")
            stmts.append(self.statement())
        self.expect("}")
        return t.Block(stmts)

    def statement(self):
        tok = self.tok
        if self.at("{"):
            return self.block()
        if self.accept(";"):
            return t.Block([])
        if self.accept("return"):
            expr = None if self.at(";") else self.expression()
            self.expect(";")
            return t.Return(expr)
        if self.accept("throw"):
            expr = self.expression()
            self.expect(";")
            return t.Throw(expr)
        if self.at("break", "continue"):
            self.i += 1
            self.expect(";")
            return t.Jump(tok.text)
        if self.accept("if"):
            self.expect("(")
            cond = self.expression()
            self.expect(")")
            then = self.statement()
            orelse = self.statement() if self.accept("else") else None
            return t.If(cond, then, orelse)
        if self.accept("while"):
            self.expect("(")
            cond = self.expression()
            self.expect(")")
            return t.While(cond, self.statement())
        if self.accept("for"):
            return self.for_statement()
        local = self.speculate(self.local_var_decl)
        if local is not None:
            self.expect(";")
            return local
        expr = self.expression()
        self.expect(";")
        return t.ExprStmt(expr)

    def local_var_decl(self) -> t.LocalVar:
        self.modifiers()
        vtype = self.type()
        if self.tok.kind != "ident":
            raise _Backtrack()
        names = []
        while True:
            name = self.ident()
            ntype = self.dims_after_name(vtype)
            if ntype is not vtype and names:
                raise _Backtrack()  # mixed array declarators are not supported
            vtype = ntype
            init = self.var_init() if self.accept("=") else None
            names.append((name.text, self.loc(name), init))
            if not self.accept(","):
                break
        if not self.at(";", ":"):
            raise _Backtrack()
        return t.LocalVar(vtype, names)

    def var_init(self):
        if self.at("{"):
            return self.array_init()
        return self.expression()

    def array_init(self) -> t.ArrayInit:
        self.expect("{")
        elements = []
        while not self.at("}"):
            elements.append(self.var_init())
            if not self.accept(","):
                break
        self.expect("}")
        return t.ArrayInit(elements)

    def for_statement(self):
        self.expect("(")

        def foreach_header():
            self.modifiers()
            vtype = self.type()
            name = self.ident()
            self.expect(":")
            return vtype, name

        header = self.speculate(foreach_header)
        if header is not None:
            vtype, name = header
            iterable = self.expression()
            self.expect(")")
            return t.ForEach(vtype, name.text, self.loc(name), iterable, self.statement())
        init = []
        if not self.at(";"):
            local = self.speculate(self.local_var_decl)
            if local is not None:
                init.append(local)
            else:
                init.append(t.ExprStmt(self.expression()))
                while self.accept(","):
                    init.append(t.ExprStmt(self.expression()))
        self.expect(";")
        cond = None if self.at(";") else self.expression()
        self.expect(";")
        update = []
        if not self.at(")"):
            update.append(self.expression())
            while self.accept(","):
                update.append(self.expression())
        self.expect(")")
        return t.For(init, cond, update, self.statement())

    # -- expressions ---------------------------------------------------------

    def expression(self):
        target = self.conditional()
        if self.tok.kind == "op" and self.tok.text in _ASSIGN_OPS:
            op = self.tok.text
            self.i += 1
            return t.Assign(op, target, self.expression())
        return target

    def conditional(self):
        cond = self.binary(0)
        if self.accept("?"):
            then = self.expression()
            self.expect(":")
            return t.Conditional(cond, then, self.conditional())
        return cond

    def binary(self, level: int):
        if level == len(_BINARY_LEVELS):
            return self.unary()
        ops = _BINARY_LEVELS[level]
        left = self.binary(level + 1)
        while True:
            if self.tok.kind == "op" and self.tok.text in ops:
                op = self.tok.text
                self.i += 1
                left = t.Binary(op, left, self.binary(level + 1))
            elif "<" in ops and self.at("instanceof"):
                self.i += 1
                left = t.InstanceOf(left, self.type())
            else:
                return left

    def unary(self):
        if self.tok.kind == "op" and self.tok.text in ("+", "-", "!", "~", "++", "--"):
            op = self.tok.text
            self.i += 1
            return t.Unary(op, self.unary())
        if self.at("("):
            cast = self.speculate(self.cast)
            if cast is not None:
                return cast
        return self.postfix()

    def cast(self) -> t.Cast:
        self.expect("(")
        ctype = self.type()
        self.expect(")")
        nxt = self.tok
        if not (ctype.is_primitive or ctype.dims or nxt.kind in _CAST_FOLLOWERS
                or (nxt.kind == "keyword" and nxt.text in ("this", "super", "new", "null",
                                                            "true", "false"))
                or (nxt.kind == "op" and nxt.text in ("(", "!", "~"))):
            raise _Backtrack()
        return t.Cast(ctype, self.unary())

    def postfix(self):
        expr = self.primary()
        while True:
            if self.at("."):
                self.i += 1
                name = self.ident()
                if self.at("("):
                    expr = t.MethodCall(expr, name.text, self.loc(name), self.arguments())
                else:
                    expr = t.FieldAccess(expr, name.text, self.loc(name))
            elif self.at("["):
                self.i += 1
                index = self.expression()
                self.expect("]")
                expr = t.Index(expr, index)
            elif self.at("++", "--"):
                op = self.tok.text
                self.i += 1
                expr = t.Unary("post" + op, expr)
            else:
                return expr

    def arguments(self) -> list:
        self.expect("(")
        args = []
        if not self.at(")"):
            args.append(self.expression())
            while self.accept(","):
                args.append(self.expression())
        self.expect(")")
        return args

    def primary(self):
        tok = self.tok
        loc = self.loc(tok)
        if tok.kind in ("int", "float", "string", "char"):
            self.i += 1
            return t.Literal(tok.kind, loc)
        if tok.kind == "keyword":
            if tok.text in ("true", "false"):
                self.i += 1
                return t.Literal("boolean", loc)
            if tok.text == "null":
                self.i += 1
                return t.Literal("null", loc)
            if tok.text in ("this", "super"):
                self.i += 1
                if self.at("("):
                    return t.ConstructorCall(tok.text, loc, self.arguments())
                return t.This(loc) if tok.text == "this" else t.Super(loc)
            if tok.text == "new":
                self.i += 1
                return self.creation(loc)
        if tok.kind == "ident":
            self.i += 1
            if self.at("("):
                return t.MethodCall(None, tok.text, loc, self.arguments())
            return t.Name(tok.text, loc)
        if self.accept("("):
            expr = self.expression()
            self.expect(")")
            return expr
        self.fail("an expression")

    def creation(self, loc: SourceLocation):
        start = self.tok
        if start.kind == "keyword" and start.text in t.PRIMITIVES:
            self.i += 1
            ctype = t.TypeRef([start.text], self.loc(start))
        else:
            qname = self.qualified_name()
            args = self.type_args() if self.at("<") else []
            ctype = t.TypeRef(qname.parts, qname.loc, args)
        if self.at("("):
            if ctype.is_primitive:
                self.fail("'['")
            return t.New(ctype, self.arguments(), loc)
        if not self.at("["):
            self.fail("'(' or '['")
        sizes = []
        while self.at("["):
            self.i += 1
            if self.accept("]"):
                ctype.dims += 1
                continue
            if ctype.dims:
                self.fail("']'")
            sizes.append(self.expression())
            self.expect("]")
            ctype.dims += 1
        init = self.array_init() if not sizes and self.at("{") else None
        if not sizes and init is None:
            self.fail("an array initializer")
        return t.NewArray(ctype, sizes, init, loc)


def parse_file(path: str, text: str) -> t.CompilationUnit:
    return Parser(path, text).compilation_unit()


def parse_source(files) -> list[t.CompilationUnit]:
    """Parse ``(path, text)`` pairs; one compilation unit per file, in input order."""
    return [parse_file(str(path), text) for path, text in files]
