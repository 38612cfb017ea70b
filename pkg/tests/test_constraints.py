from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from archlint.constraints import ConstraintProgram, clause, parse_constraints
from archlint.errors import (
    ConstraintSyntaxError,
    DuplicateScopeName,
    ReservedPredicate,
    UnknownPredicate,
)
from corpus_tools import IMAGEMGR, constraints
from randgraphs import random_graph, random_program


def test_single_hide_scope():
    program = parse_constraints("hideScope('ImageDoc').")
    assert program.clauses == [clause("hideScope", "ImageDoc")]
    assert program.clauses[0].line == 1


def test_imagemgr_constraint_file():
    program = parse_constraints((IMAGEMGR / "hide_imagedoc.cc").read_text())
    assert [c.kind for c in program] == ["hideScope"]


def test_dspace_layering_file():
    program = parse_constraints(constraints("layers_expanded.cc"))
    assert len(program) == 4
    assert {c.functor for c in program} == {"virtualScope", "hideScopeFrom", "hideScopeButFrom"}
    vs = program.clauses[0]
    assert vs.args[0] == "org.dspace.business"
    assert "org.dspace.content" in vs.args[1]
    assert program.clauses[1].args == ("org.dspace.app",
                                       ("org.dspace.business", "org.dspace.storage"))


def test_every_form_parses():
    text = """
    % all eleven forms
    hideFrom('B', 'A').
    canSee('A', 'B').
    hideScope('S').
    hideScope('S', ['F'], ['I1', 'I2'], []).
    hideScopeBut('S', ['F']).
    hideScopeFrom('S', ['I']).
    hideScopeButFrom('S', ['Fr']).
    virtualScope('V', ['a', 'b']).
    declareSet('W', []).
    hideSet('W').
    layers(['top', 'mid', 'bottom']).
    """
    program = parse_constraints(text)
    assert [c.kind for c in program] == [
        "hideFrom", "canSee", "hideScope", "hideScope4", "hideScopeBut", "hideScopeFrom",
        "hideScopeButFrom", "virtualScope", "declareSet", "hideSet", "layers"]
    assert program.clauses[3].args[3] == ()
    assert [c.line for c in program][:3] == [3, 4, 5]


def test_atom_where_list_expected_is_a_singleton():
    c = parse_constraints("hideScopeFrom('AuthorizeManager.authorizeAction', 'Bitstream.create').")
    assert c.clauses[0].args[1] == ("Bitstream.create",)


def test_clauses_may_span_lines():
    program = parse_constraints("layers(['a',\n   'b']).\nhideScope(\n'c').")
    assert [c.line for c in program] == [1, 3]


def test_hidden_from_is_reserved():
    with pytest.raises(ReservedPredicate) as info:
        parse_constraints("hiddenFrom('B','A').")
    assert "hideFrom" in str(info.value)


@pytest.mark.parametrize("text", ["hideScopes('A').", "hideScope('A', 'B').", "layers(['a'], ['b'])."])
def test_unknown_predicates(text):
    with pytest.raises(UnknownPredicate):
        parse_constraints(text)


@pytest.mark.parametrize("text", [
    "hideScope('A')",
    "hideScope(A).",
    "hideScope(['A']).",
    "layers(['only']).",
    "hideScope('A'",
    "hideFrom('A', 'B', ).",
])
def test_syntax_errors(text):
    with pytest.raises(ConstraintSyntaxError):
        parse_constraints(text)


def test_syntax_error_position():
    with pytest.raises(ConstraintSyntaxError) as info:
        parse_constraints("hideScope('A').\n  hideScope('B' 'C').")
    assert (info.value.line, info.value.column) == (2, 17)


def test_duplicate_scope_names():
    with pytest.raises(DuplicateScopeName):
        parse_constraints("virtualScope('V', ['a']).\ndeclareSet('V', ['b']).")


def test_empty_file():
    assert len(parse_constraints("% nothing here\n")) == 0


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10**9))
def test_pretty_print_round_trip(seed):
    rng = random.Random(seed)
    program = random_program(rng, random_graph(rng))
    again = parse_constraints(program.to_text())
    assert again.clauses == program.clauses
    assert again.to_text() == program.to_text()


def test_quotes_survive_round_trip():
    program = ConstraintProgram([clause("hideScope", "it's")])
    assert parse_constraints(program.to_text()).clauses == program.clauses
