import random
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from nomabt import alpha_eq, assignables_signature, lambda_signature
from nomabt.errors import (ArityMismatch, DuplicateName, DuplicateOperator, DuplicateSort,
                           ParseError, UnknownOperator, UnknownSort)
from nomabt.syntax import (SourceSpan, parse_abstraction, parse_arity, parse_meta_ctx,
                           parse_signature, parse_symbol_ctx, parse_term, parse_valence,
                           parse_var_ctx, print_abstraction, print_signature, print_term)
from nomabt.term import MetaApp, Var
from nomabt.testing import random_instance

DATA = Path(__file__).resolve().parent.parent / "data"
ASG = assignables_signature()


def test_shipped_signature_files_match_the_builtins():
    assert parse_signature((DATA / "lambda.sig").read_text()) == lambda_signature()
    assert parse_signature((DATA / "assignables.sig").read_text()) == ASG


def test_print_signature_round_trips():
    text = print_signature(ASG)
    assert text.splitlines()[4] == "op decl : (.exp,{exp}.exp)exp"
    assert parse_signature(text) == ASG


def test_signature_extends_a_base():
    sig = parse_signature("sort loc\nop ref {loc} : () exp", base=ASG)
    assert sig.has_sort("loc") and sig.is_operator("ref") and sig.is_operator("lam")


@pytest.mark.parametrize("text,err,line,col", [
    ("sort exp\nsort exp", DuplicateSort, 2, 6),
    ("sort exp\nop lam : () exp\nop lam : () exp", DuplicateOperator, 3, 1),
    ("sort exp\nop f : (.nat) exp", UnknownSort, 2, 1),
    ("op : x", ParseError, 1, 4),
    ("sorts exp", ParseError, 1, 1),
])
def test_signature_errors_are_located(text, err, line, col):
    with pytest.raises(err) as e:
        parse_signature(text, "f.sig")
    span = e.value.span
    assert (span.file, span.line, span.col) == ("f.sig", line, col)


def test_contexts_and_types():
    assert str(parse_symbol_ctx("u:exp, v:exp")) == "u:exp, v:exp"
    assert len(parse_symbol_ctx(".")) == 0 and len(parse_var_ctx("")) == 0
    assert str(parse_meta_ctx("m:{exp}[exp].exp, n:.exp")) == "m:{exp}[exp].exp, n:.exp"
    assert str(parse_valence("{exp,exp}.jdg")) == "{exp,exp}.jdg"
    assert str(parse_arity("()exp")) == "()exp"
    with pytest.raises(DuplicateName):
        parse_symbol_ctx("u:exp, u:exp")


def test_term_forms():
    t = parse_term("m{u,v}(x, lam([y].y))", ASG, metas=("m",))
    assert isinstance(t, MetaApp) and t.params == ("u", "v") and len(t.args) == 2
    assert parse_term("m", ASG, metas=("m",)) == MetaApp("m", (), ())
    assert parse_term("x", ASG) == Var("x")
    # ℵ and the backslash are interchangeable; binder groups may be empty
    assert parse_term("decl(x, ℵ{u}.get[u])", ASG) == parse_term(r"decl(x, \{u}.get[u])", ASG)
    assert parse_term("decl(x, {u}[].get[u])", ASG) == parse_term("decl(x, {u}.get[u])", ASG)
    assert print_abstraction(parse_abstraction("{u}[x].set[u](x)", ASG)) == r"\{u}[x].set[u](x)"


def test_unicode_printing():
    t = parse_term("decl(x, {u}.get[u])", ASG)
    assert print_term(t, unicode=True) == "decl(x, ℵ{u}.get[u])"


@pytest.mark.parametrize("text,err,col", [
    ("ap(x", ParseError, 5),
    ("lam([x].x) y", ParseError, 12),
    ("frob(x)", UnknownOperator, 1),
    ("get[u, v]", ArityMismatch, 1),
    ("lam([x,x].x)", DuplicateName, 10),
])
def test_term_errors_are_located(text, err, col):
    with pytest.raises(err) as e:
        parse_term(text, ASG)
    assert isinstance(e.value.span, SourceSpan)
    assert e.value.span.col == col


def test_spans_are_byte_offsets():
    with pytest.raises(ParseError) as e:
        parse_term("decl(ℵ ℵ", ASG)
    span = e.value.span
    assert span.col == 8 and span.start == len("decl(ℵ ".encode())


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32 - 1), st.booleans())
def test_print_then_parse_is_alpha_identity(seed, unicode):
    inst = random_instance(random.Random(seed))
    text = print_term(inst.term, unicode=unicode)
    back = parse_term(text, inst.sig, metas=tuple(inst.meta))
    assert alpha_eq(back, inst.term)
    assert print_term(back, unicode=unicode) == text
