import pytest
from hypothesis import given, strategies as st

from nomabt import (Arity, OperatorDecl, OperatorInst, Valence, assignables_signature,
                    check_operator, declare_signature, lambda_signature,
                    operator_support, rename_operator)
from nomabt.contexts import SymbolCtx, make_renaming
from nomabt.errors import (DuplicateOperator, DuplicateSort, SortMismatch,
                           SymbolNotInDomain, UnboundSymbol, UnknownOperator,
                           UnknownSort)
from nomabt.syntax import parse_arity, parse_valence

SIG = assignables_signature()
U = SymbolCtx.of(("u", "exp"))


def inst(name, *params):
    return SIG.instance(name, params)


def test_valence_and_arity_print_in_declaration_syntax():
    assert str(parse_valence("{exp}[exp,exp].exp")) == "{exp}[exp,exp].exp"
    assert str(parse_valence(".exp")) == ".exp"
    assert str(parse_arity("(.exp, {exp}.exp) exp")) == "(.exp,{exp}.exp)exp"


@pytest.mark.parametrize("name,ctx,arity", [
    ("lam", SymbolCtx(), "([exp].exp)exp"),
    ("fix", SymbolCtx(), "([exp].exp)exp"),
    ("ap", SymbolCtx(), "(.exp,.exp)exp"),
    ("decl", SymbolCtx(), "(.exp,{exp}.exp)exp"),
])
def test_parameterless_operators(name, ctx, arity):
    assert str(check_operator(SIG, ctx, inst(name))) == arity


def test_get_and_set_need_their_symbol():
    assert str(check_operator(SIG, U, inst("get", "u"))) == "()exp"
    assert str(check_operator(SIG, U, inst("set", "u"))) == "(.exp)exp"
    with pytest.raises(UnboundSymbol) as e:
        check_operator(SIG, SymbolCtx(), inst("get", "u"))
    assert "u" in str(e.value)


def test_parameter_of_the_wrong_sort():
    sig = declare_signature(["exp", "loc"], [OperatorDecl("get", ("loc",), Arity((), "exp"))])
    with pytest.raises(SortMismatch):
        check_operator(sig, U, sig.instance("get", ("u",)))


def test_foreign_declaration_is_rejected():
    stranger = OperatorDecl("get", ("exp",), Arity((Valence((), (), "exp"),), "exp"))
    with pytest.raises(UnknownOperator):
        check_operator(SIG, U, OperatorInst(stranger, ("u",)))


def test_declare_signature_errors_name_the_culprit():
    with pytest.raises(DuplicateSort, match="exp"):
        declare_signature(["exp", "exp"], [])
    lam = OperatorDecl("lam", (), Arity((Valence((), ("exp",), "exp"),), "exp"))
    with pytest.raises(DuplicateOperator, match="lam"):
        declare_signature(["exp"], [lam, lam])
    with pytest.raises(UnknownSort, match="prop"):
        declare_signature(["exp"], [OperatorDecl("p", ("prop",), Arity((), "exp"))])
    assert declare_signature([], []).operators == ()


def test_instance_arity_is_checked():
    with pytest.raises(Exception):
        SIG.instance("get", ())


def test_rename_operator():
    rho = make_renaming(U, SymbolCtx.of(("v", "exp")), [("u", "v")])
    assert str(rename_operator(inst("get", "u"), rho)) == "get[v]"
    assert rename_operator(inst("lam"), rho) == inst("lam")
    two = SymbolCtx.of(("u", "exp"), ("v", "exp"))
    rho2 = make_renaming(two, SymbolCtx.of(("u", "exp"), ("w", "exp")), [("u", "u"), ("v", "w")])
    assert str(rename_operator(inst("set", "u"), rho2)) == "set[u]"
    with pytest.raises(SymbolNotInDomain):
        rename_operator(inst("get", "z"), rho)


def test_operator_support():
    assert operator_support(inst("get", "u")) == {("u", "exp")}
    assert operator_support(inst("ap")) == frozenset()
    assert operator_support(inst("decl")) == frozenset()


def test_lambda_is_a_fragment_of_assignables():
    lam = lambda_signature()
    assert set(lam.operators) <= set(SIG.operators)
    assert set(d.name for d in SIG.operators) - set(d.name for d in lam.operators) == {"decl", "get", "set"}


# -- functoriality and support on operator instances ------------------------------

NAMES = ["u", "v", "w", "p", "q"]


@st.composite
def renamings(draw):
    k = draw(st.integers(0, 3))
    dom = draw(st.permutations(NAMES))[:k]
    cod = draw(st.permutations(NAMES))
    return dict(zip(dom, cod))


@given(renamings(), renamings(), st.sampled_from(NAMES))
def test_rename_operator_composes(r1, r2, u):
    if u not in r1 or r1[u] not in r2:
        return
    g = inst("get", u)
    assert rename_operator(rename_operator(g, r1), r2) == rename_operator(g, {a: r2[b] for a, b in r1.items() if b in r2})
    assert rename_operator(g, {u: u}) == g


@given(renamings(), renamings())
def test_renamings_agreeing_on_the_support_agree(r1, r2):
    for u in set(r1) & set(r2):
        if r1[u] == r2[u]:
            g = inst("set", u)
            assert {a for a, _ in operator_support(g)} <= {u}
            assert rename_operator(g, r1) == rename_operator(g, r2)
