import random

import pytest
from hypothesis import given, settings, strategies as st

from nomabt import (MetaCtx, SymbolCtx, VarCtx, alpha_eq, assignables_signature, canonicalize,
                    check, check_abs, check_as, fresh_name, lambda_signature, parse_term)
from nomabt.errors import (ArityMismatch, DuplicateName, SortMismatch, UnboundMetavariable,
                           UnboundSymbol, UnboundVariable, ValenceMismatch)
from nomabt.sequents import SIGMA_SEQ, example_sequent
from nomabt.syntax import (parse_abstraction, parse_meta_ctx, parse_symbol_ctx, parse_valence,
                           parse_var_ctx)
from nomabt.term import Abstraction, Var, is_well_sorted, show_canonical
from nomabt.testing import random_alpha_variant, random_instance

from corpus import alpha_corpus
from oracles import alpha_oracle

LAM = lambda_signature()
ASG = assignables_signature()
NONE = MetaCtx()


def T(text, sig=ASG, metas=()):
    return parse_term(text, sig, metas)


def test_checks_by_hand_derivation():
    assert check(NONE, SymbolCtx(), parse_var_ctx("y:exp"), T("ap(lam([x].x), y)", LAM), LAM) == "exp"
    assert check(NONE, SymbolCtx(), parse_var_ctx("x:exp"), Var("x")) == "exp"
    assert check(NONE, SymbolCtx(), VarCtx(), example_sequent(), SIGMA_SEQ) == "jdg"


def test_check_abs():
    ident = parse_abstraction("[x].x", LAM)
    assert str(check_abs(NONE, SymbolCtx(), VarCtx(), ident.annotated(LAM.operator("lam").arity.valences[0]), LAM)) == "[exp].exp"
    e = parse_abstraction("{u}.set[u](y)", ASG)
    v = parse_valence("{exp}.exp")
    assert check_abs(NONE, SymbolCtx(), parse_var_ctx("y:exp"), e, ASG, expected=v) == v
    body = example_sequent().args[0]
    assert str(check_abs(NONE, SymbolCtx(), VarCtx(), body, SIGMA_SEQ)) == "{exp,exp}.jdg"


def test_binders_shadow_context_entries():
    # u is both in the context (as another sort would be) and bound; the
    # binder wins inside its scope
    sig = ASG.extend(sorts=["loc"])
    syms = SymbolCtx.of(("u", "loc"))
    assert check(NONE, syms, VarCtx(), T("decl(lam([x].x), {u}.get[u])", sig), sig) == "exp"
    t = T("lam([x].lam([x].x))")
    assert check(NONE, SymbolCtx(), parse_var_ctx("x:exp"), t, ASG) == "exp"


@pytest.mark.parametrize("text,ctx,err,path", [
    ("ap(x, y)", "x:exp", UnboundVariable, (1,)),
    ("lam([x].get[u])", "", UnboundSymbol, (0,)),
    ("ap(lam([x].x, y))", "y:exp", ArityMismatch, ()),
    ("m", "", UnboundMetavariable, ()),
])
def test_errors_carry_a_path(text, ctx, err, path):
    metas = ("m",) if text == "m" else ()
    with pytest.raises(err) as e:
        check(NONE, SymbolCtx(), parse_var_ctx(ctx), T(text, metas=metas), ASG)
    assert e.value.path == path


def test_sort_mismatch_reports_both_sorts():
    sig = ASG.extend(sorts=["nat"])
    with pytest.raises(SortMismatch) as e:
        check(NONE, SymbolCtx(), parse_var_ctx("n:nat"), T("lam([x].n)", sig), sig)
    assert "exp" in str(e.value) and "nat" in str(e.value)
    assert e.value.path == (0,)
    with pytest.raises(SortMismatch):
        check_as(NONE, SymbolCtx(), parse_var_ctx("n:nat"), Var("n"), "exp", sig)


def test_metavariable_application():
    theta = parse_meta_ctx("m:{exp}[exp].exp")
    syms = parse_symbol_ctx("u:exp")
    assert check(theta, syms, VarCtx(), T("m{u}(lam([x].x))", metas=("m",)), ASG) == "exp"
    # repeated parameters are allowed: the rule has no distinctness premise
    theta2 = parse_meta_ctx("m:{exp,exp}.exp")
    assert check(theta2, syms, VarCtx(), T("m{u,u}", metas=("m",)), ASG) == "exp"
    with pytest.raises((ArityMismatch, ValenceMismatch)):
        check(theta, syms, VarCtx(), T("m{u}", metas=("m",)), ASG)


def test_abstraction_rejects_repeated_binders():
    with pytest.raises(DuplicateName):
        Abstraction((), (("x", None), ("x", None)), Var("x"))


def test_fresh_name():
    assert fresh_name("x", {"x"}) == "x1"
    assert fresh_name("x1", {"x", "x1"}) == "x2"
    assert fresh_name("y", set()) == "y1"


# -- α-equivalence ------------------------------------------------------------------

def test_alpha_eq_examples():
    assert alpha_eq(T("lam([x].x)"), T("lam([y].y)"))
    assert not alpha_eq(T("lam([x].y)"), T("lam([x].z)"))
    a = T("decl(lam([x].x), {u}.set[u](get[u]))")
    b = T("decl(lam([x].x), {w}.set[w](get[w]))")
    assert alpha_eq(a, b) and canonicalize(a) == canonicalize(b)
    # symbols and variables live in separate namespaces
    assert not alpha_eq(T("decl(y, {u}.get[u])"), T("decl(y, {u}.get[v])"))


def test_canonical_coordinates():
    assert show_canonical(canonicalize(T("lam([x].x)"))) == "lam([•].⟨0,0⟩)"
    assert show_canonical(canonicalize(Var("x"))) == "x"
    assert show_canonical(canonicalize(T("fix([f].ap(f, lam([x].x)))"))) == \
        "fix([•].ap(⟨1,0⟩, lam([•].⟨0,0⟩)))"


def test_alpha_eq_agrees_with_the_enumeration_oracle():
    pairs = alpha_corpus(seed=11, size=120)
    assert all(alpha_eq(m, n) == alpha_oracle(m, n) for m, n in pairs)


seeds = st.integers(0, 2**32 - 1)


@settings(max_examples=150, deadline=None)
@given(seeds)
def test_check_is_invariant_under_alpha(seed):
    rng = random.Random(seed)
    inst = random_instance(rng)
    variant = random_alpha_variant(rng, inst.term)
    assert alpha_eq(inst.term, variant) and alpha_eq(variant, inst.term)
    assert check(inst.meta, inst.syms, inst.vars, variant, inst.sig) == inst.sort


@settings(max_examples=150, deadline=None)
@given(seeds)
def test_weakening(seed):
    rng = random.Random(seed)
    inst = random_instance(rng)
    syms = inst.syms
    for name in ("p", "q"):
        if name not in syms:
            syms = syms.extend(name, rng.choice(inst.sig.sorts))
    vars_ = inst.vars.extend("fresh_var", inst.sig.sorts[0])
    meta = inst.meta.extend("fresh_meta", parse_valence(".a"))
    assert check(meta, syms, vars_, inst.term, inst.sig) == inst.sort


@settings(max_examples=100, deadline=None)
@given(seeds, seeds)
def test_alpha_eq_is_an_equivalence(s1, s2):
    rng = random.Random(s1)
    m = random_instance(rng).term
    n = random_alpha_variant(random.Random(s2), m)
    o = random_alpha_variant(random.Random(s2 + 1), n)
    assert alpha_eq(m, m)
    assert alpha_eq(m, n) == alpha_eq(n, m)
    assert alpha_eq(m, o)
    assert (canonicalize(m) == canonicalize(o))


def test_ill_sorted_terms_are_reported_not_raised():
    assert not is_well_sorted(NONE, SymbolCtx(), VarCtx(), Var("x"))
