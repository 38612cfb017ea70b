from __future__ import annotations

import random

import pytest

from archlint.errors import AmbiguousName, DuplicateDeclaration, ParseError
from archlint.facts import emit_facts
from archlint.graph import EntityKind
from archlint.javalite import collect_sources, extract, parse_file, parse_source
from archlint.javalite import tree as t
from corpus_tools import DSPACE_SRC, IMAGEMGR, dspace_sources

IMAGEMGR_SIX = {
    ("ImageMgr.ImageMgr()", "ImageDoc"),
    ("ImageMgr.display()", "ImageDoc"),
    ("ImageMgr.images", "ImageDoc"),
    ("ImageMgr.display()", "ImageDoc.getName()"),
    ("ImageMgr.addImage()", "ImageDoc.ImageDoc()"),
    ("ImageMgr.addImage()", "ImageDoc"),
}


def imagemgr_files():
    return collect_sources([str(IMAGEMGR)])


def uses_of(g):
    return {(e.src, e.tgt) for e in g.uses}


def graph(*sources):
    return extract([(f"F{i}.jl", text) for i, text in enumerate(sources)])


def test_imagemgr_parses_to_two_classes_with_eight_members():
    units = parse_source(imagemgr_files())
    assert len(units) == 2
    types = [td for u in units for td in u.types]
    assert [td.name for td in types] == ["ImageDoc", "ImageMgr"]
    assert [len(td.members) for td in types] == [3, 5]
    mgr = types[1]
    assert {type(m) for m in mgr.members} == {t.FieldDecl, t.ConstructorDecl, t.MethodDecl}


def test_imagemgr_uses_into_imagedoc_are_the_six():
    g = extract(imagemgr_files())
    inside = g.contains_star("ImageDoc")
    crossing = {(a, b) for a, b in uses_of(g) if b in inside and a not in inside}
    assert crossing == IMAGEMGR_SIX
    assert g.depends_on("ImageMgr", "ImageDoc")
    assert not g.depends_on("ImageDoc", "ImageMgr")


def test_imagemgr_members_and_kinds():
    g = extract(imagemgr_files())
    assert g.kind("ImageDoc.ImageDoc()") is EntityKind.CONSTRUCTOR
    assert g.kind("ImageMgr.main(String[])") is EntityKind.METHOD
    assert g.kind("ImageMgr.images") is EntityKind.FIELD
    assert g.kind("ArrayList") is EntityKind.UNRESOLVED
    assert ("ImageMgr.main(String[])", "ImageMgr.ImageMgr()") in uses_of(g)
    assert ("ImageMgr.main(String[])", "ImageMgr.addImage()") in uses_of(g)


def test_occurrences_carry_lines():
    g = extract(imagemgr_files())
    edge = g.uses_edge("ImageMgr.display()", "ImageDoc.getName()")
    assert [(o.file.rsplit("/", 1)[-1], o.line) for o in edge.occurrences] == [("ImageMgr.jl", 7)]


def test_parse_error_location():
    with pytest.raises(ParseError) as info:
        parse_file("A.jl", "class A { void m( }")
    err = info.value
    assert (err.file, err.line) == ("A.jl", 1)
    assert err.column == 19
    assert str(err).startswith("A.jl:1:19:")


@pytest.mark.parametrize("text", [
    "import java.util.*; class A {}",
    "import static java.lang.Math.max; class A {}",
    "class A { int x = ; }",
    "class A { void m() { return 1 } }",
    "class A extends { }",
    "class A { void m() { x = \"unterminated; } }",
])
def test_rejected_sources(text):
    with pytest.raises(ParseError):
        parse_file("A.jl", text)


def test_empty_file():
    units = parse_source([("Empty.jl", "")])
    assert len(units) == 1 and units[0].types == []
    assert len(extract([("Empty.jl", "")]).nodes) == 0


def test_unknown_type_becomes_unresolved():
    g = graph("class A { B b; }")
    assert ("A.b", "B") in uses_of(g)
    assert g.kind("B") is EntityKind.UNRESOLVED


def test_supertype_clause_is_isa_and_uses():
    g = graph("class S extends T {}", "class T {}")
    assert g.isa == {("S", "T")}
    assert uses_of(g) == {("S", "T")}


def test_interfaces_and_implements():
    g = graph("interface I { void run(); }",
              "interface J extends I {}",
              "class C implements J { public void run() {} }")
    assert g.kind("I") is EntityKind.INTERFACE
    assert {("J", "I"), ("C", "J")} <= g.isa
    assert g.kind("I.run()") is EntityKind.METHOD


def test_member_found_through_supertype():
    g = graph("class T { int x; int get() { return x; } }",
              "class S extends T { int m() { return x + get(); } }",
              "class U { int k(S s) { return s.x + s.get(); } }")
    used = uses_of(g)
    assert {("S.m()", "T.x"), ("S.m()", "T.get()")} <= used
    assert {("U.k(S)", "S"), ("U.k(S)", "T.x"), ("U.k(S)", "T.get()")} <= used


def test_calls_resolve_by_arity():
    g = graph("class A { void m() {} void m(int a) {} void n() { m(1); } void o() { m(); } }")
    used = uses_of(g)
    assert ("A.n()", "A.m(int)") in used and ("A.n()", "A.m()") not in used
    assert ("A.o()", "A.m()") in used


def test_constructor_calls_record_class_and_constructor():
    g = graph("class P { P() {} P(int a) {} }",
              "class Q { void f() { P p = new P(3); } }")
    used = uses_of(g)
    assert {("Q.f()", "P"), ("Q.f()", "P.P(int)")} <= used
    assert ("Q.f()", "P.P()") not in used


def test_declaration_type_names_are_occurrences():
    g = graph("class E {}", "class R {}", "class Arg {}", "class G {}", "class L {}",
              "class A { R m(Arg a) throws E { L x = null; return null; } Map<G, R> f; }")
    used = uses_of(g)
    assert {("A.m(Arg)", t) for t in ("R", "Arg", "E", "L")} <= used
    assert {("A.f", "Map"), ("A.f", "G"), ("A.f", "R")} <= used


def test_locals_shadow_fields_and_statements_are_walked():
    g = graph("class B { int v; }",
              "class C { B b; int m(B[] xs) { int b = 0; for (B x : xs) { b = b + x.v; }"
              " while (b > 3) { if (b == 4) { return b; } else { b = b - 1; } } return b; } }")
    used = uses_of(g)
    assert ("C.m(B[])", "C.b") not in used
    assert ("C.m(B[])", "B.v") in used


def test_field_initializer_attaches_to_field():
    g = graph("class K { static int z() { return 1; } }", "class A { int f = K.z(); }")
    assert {("A.f", "K"), ("A.f", "K.z()")} <= uses_of(g)


def test_string_literals_are_not_occurrences():
    g = graph("class ImageDoc {}", "class A { String s = \"ImageDoc\"; }")
    assert ("A.s", "ImageDoc") not in uses_of(g)


def test_packages_and_imports():
    g = extract([
        ("q/B.jl", "package q; public class B { public static int k() { return 0; } }"),
        ("p/A.jl", "package p; import q.B; class A { int m() { return B.k(); } }"),
        ("p/C.jl", "package p; class C { A a; }"),
    ])
    assert g.kind("q") is EntityKind.PACKAGE
    assert {("p.A.m()", "q.B"), ("p.A.m()", "q.B.k()"), ("p.C.a", "p.A")} <= uses_of(g)
    assert g.ancestors("p.A.m()") == ["p.A.m()", "p.A", "p"]
    assert not any(b == "q" for _, b in uses_of(g))


def test_nested_packages_form_a_chain():
    g = extract([("A.jl", "package org.x.y; class A {}")])
    assert g.ancestors("org.x.y.A") == ["org.x.y.A", "org.x.y", "org.x", "org"]


def test_conflicting_imports_are_ambiguous():
    files = [("a/X.jl", "package a; public class X {}"),
             ("b/X.jl", "package b; public class X {}"),
             ("c/U.jl", "package c; import a.X; import b.X; class U { X x; }")]
    with pytest.raises(AmbiguousName):
        extract(files)


def test_duplicate_members_are_rejected():
    with pytest.raises(DuplicateDeclaration):
        graph("class A { void m(int a) {} void m(String b) {} }")
    with pytest.raises(DuplicateDeclaration):
        graph("class A {}", "class A {}")


def test_no_self_loops_and_isa_always_has_uses():
    g = extract(dspace_sources("pkg", "cls", "lay"))
    for e in g.uses:
        assert e.src != e.tgt
        assert g.kind(e.src) is not EntityKind.UNRESOLVED
    for sub, sup in g.isa:
        assert g.uses_edge(sub, sup) is not None


def test_result_does_not_depend_on_file_order():
    files = dspace_sources("pkg", "cls")
    reference = emit_facts(extract(files))
    rng = random.Random(7)
    for _ in range(5):
        shuffled = files[:]
        rng.shuffle(shuffled)
        assert emit_facts(extract(shuffled)) == reference


def test_collect_sources_walks_directories():
    files = collect_sources([str(DSPACE_SRC)])
    assert len(files) == 18
    assert [p for p, _ in files] == sorted(p for p, _ in files)
