import random

import pytest
from hypothesis import given, settings, strategies as st

from nomabt import (Environment, MetaCtx, SymbolCtx, VarCtx, alpha_eq, assignables_signature,
                    free_syms, free_vars, identity_environment, instantiate, interpret,
                    lambda_signature, msubst, parse_term, print_term, rename, rename_partial,
                    subst, subst_simultaneous)
from nomabt.contexts import make_renaming
from nomabt.errors import (DuplicateTarget, IncompleteEnvironment, SymbolNotInDomain,
                           ValenceMismatch)
from nomabt.syntax import parse_abstraction, parse_meta_ctx, parse_symbol_ctx, parse_valence, parse_var_ctx
from nomabt.term import Var

from laws import LAWS, interpret_is_the_composite

LAM = lambda_signature()
ASG = assignables_signature()


def T(text, metas=()):
    return parse_term(text, ASG, metas)


def A(text, metas=()):
    return parse_abstraction(text, ASG, metas)


def test_free_vars():
    assert free_vars(Var("x")) == {"x"}
    assert free_vars(T("lam([x].x)")) == set()
    assert free_vars(T("ap(lam([x].x), y)")) == {"y"}


def test_free_syms():
    assert free_syms(Var("x")) == set()
    assert free_syms(T("get[u]")) == {"u"}
    t = T("decl(c, {u}.set[u](m{v}))", metas=("m",))
    assert free_syms(t) == {"v"}


def test_rename():
    rho = make_renaming(parse_symbol_ctx("u:exp"), parse_symbol_ctx("v:exp"), [("u", "v")])
    assert print_term(rename(T("get[u]"), rho)) == "get[v]"
    closed = T("decl(lam([x].x), {u}.get[u])")
    assert alpha_eq(rename(closed, {}), closed)
    out = rename(T("decl(y, {u}.set[u](get[w]))"), {"w": "u1"})
    assert print_term(out) == r"decl(y, \{u}.set[u](get[u1]))"
    with pytest.raises(SymbolNotInDomain):
        rename(T("get[u]"), {})


def test_rename_freshens_a_binder_that_would_capture():
    out = rename(T("decl(y, {u}.set[u](get[w]))"), {"w": "u"})
    assert print_term(out) == r"decl(y, \{u1}.set[u1](get[u]))"
    assert not alpha_eq(out, T("decl(y, {u}.set[u](get[u]))"))


def test_rename_partial_may_identify_symbols():
    assert print_term(rename_partial(T("ap(get[u], get[v])"), {"u": "w", "v": "w"})) == "ap(get[w], get[w])"


def test_subst():
    n = T("lam([z].z)")
    assert subst(n, "x", Var("x")) == n
    assert subst(n, "x", T("lam([x].x)")) == T("lam([x].x)")
    out = subst(Var("y"), "x", T("lam([y].ap(y, x))"))
    assert print_term(out) == r"lam(\[y1].ap(y1, y))"
    assert alpha_eq(out, T("lam([z].ap(z, y))"))


def test_subst_freshens_bound_symbols_against_the_replacement():
    out = subst(T("get[u]"), "x", T("decl(y, {u}.set[u](x))"))
    assert print_term(out) == r"decl(y, \{u1}.set[u1](get[u]))"


def test_subst_simultaneous():
    assert print_term(subst_simultaneous([("x", Var("y")), ("y", Var("x"))], T("ap(x, y)"))) == "ap(y, x)"
    m = T("ap(x, lam([z].x))")
    assert subst_simultaneous([], m) == m
    with pytest.raises(DuplicateTarget):
        subst_simultaneous([("x", Var("y")), ("x", Var("z"))], m)


def test_instantiate():
    e = A("{u}[x].set[u](x)")
    assert print_term(instantiate(e, ["v"], [T("get[v]")])) == "set[v](get[v])"
    with pytest.raises(ValenceMismatch):
        instantiate(e, [], [])


def test_msubst():
    ident = A("[x].x")
    assert msubst(ident, "m", T("m(y)", metas=("m",))) == Var("y")
    assert msubst(ident, "m", Var("x")) == Var("x")
    e = A("{u}[x].set[u](x)")
    out = msubst(e, "m", T("m{v}(get[v])", metas=("m",)))
    assert print_term(out) == "set[v](get[v])"


def test_msubst_is_hereditary():
    # the argument is substituted before the outer occurrence is instantiated
    e = A("[x].ap(x, x)")
    out = msubst(e, "m", T("m(m(y))", metas=("m",)))
    assert print_term(out) == "ap(ap(y, y), ap(y, y))"


def test_msubst_checks_the_valence():
    e = A("[x].x").annotated(parse_valence("[exp].exp"))
    with pytest.raises(ValenceMismatch):
        msubst(e, "m", T("m", metas=("m",)), expected=parse_valence("{exp}.exp"))


def test_msubst_freshens_binders_against_the_value():
    e = A("[x].ap(x, z)")
    out = msubst(e, "m", T("lam([z].m(z))", metas=("m",)))
    assert alpha_eq(out, T("lam([w].ap(w, z))"))


def test_interpret_examples():
    meta = parse_meta_ctx("m:[exp].exp")
    syms = parse_symbol_ctx("u:exp")
    vars_ = parse_var_ctx("y:exp")
    t = T("ap(m(y), get[u])", metas=("m",))
    assert alpha_eq(interpret(meta, syms, vars_, t, identity_environment(meta, syms, vars_)), t)
    env = Environment({"m": A("[x].x")}, {"u": "u"}, {"y": Var("y")})
    assert print_term(interpret(meta, syms, vars_, T("m(y)", metas=("m",)), env)) == "y"
    env = Environment({"m": A("[x].x")}, {"u": "v"}, {"y": Var("y")})
    assert print_term(interpret(meta, syms, vars_, T("get[u]"), env)) == "get[v]"
    with pytest.raises(IncompleteEnvironment):
        interpret(meta, syms, vars_, T("get[u]"), Environment({}, {"u": "v"}, {"y": Var("y")}))


def test_interpret_avoids_capture_by_environment_values():
    meta, syms = MetaCtx(), SymbolCtx()
    vars_ = parse_var_ctx("y:exp")
    env = Environment({}, {}, {"y": Var("x")})
    out = interpret(meta, syms, vars_, T("lam([x].ap(x, y))"), env)
    assert alpha_eq(out, T("lam([z].ap(z, x))"))


seeds = st.integers(0, 2**32 - 1)


@pytest.mark.parametrize("name", sorted(LAWS))
@settings(max_examples=60, deadline=None)
@given(seed=seeds)
def test_law(name, seed):
    LAWS[name](random.Random(seed))


@settings(max_examples=60, deadline=None)
@given(seed=seeds)
def test_interpret_is_the_composite(seed):
    interpret_is_the_composite(random.Random(seed))
