"""Telescopes and sequents: a signature with a parametric-judgment former
``∇[σ⃗]`` and an inductive wellformedness refinement on top of sorting.

Notation (parsed and printed by :mod:`nomabt.syntax`)::

    ⋄            nil            (ASCII <>)
    H, u:A       snoc[u](H, A)
    H ≫ A        sequent(H, A)  (ASCII >>)
    'u           hyp[u]
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .algebra import rename_partial
from .contexts import MetaCtx, SymbolCtx, VarCtx
from .errors import AbtError, PresuppositionFailure, UnknownSort
from .signature import Arity, OperatorDecl, Signature, Valence, declare_signature
from .term import Abstraction, MetaApp, OpApp, Var, check, fresh_name

EXP, PROP, TELE, JDG = "exp", "prop", "tele", "jdg"


def _v(target, syms=(), vars_=()):
    return Valence(syms, vars_, target)


NIL = OperatorDecl("nil", (), Arity((), TELE))
SNOC = OperatorDecl("snoc", (EXP,), Arity((_v(TELE), _v(PROP)), TELE))
HYP = OperatorDecl("hyp", (EXP,), Arity((), EXP))
SEQUENT = OperatorDecl("sequent", (), Arity((_v(TELE), _v(PROP)), JDG))
PRED_P = OperatorDecl("P", (), Arity((), PROP))
PRED = OperatorDecl("pred", (), Arity((_v(EXP),), PROP))


@dataclass(frozen=True)
class NablaDecl(OperatorDecl):
    """``∇[σ⃗] : ({σ⃗}.jdg) jdg``; ``index`` is the sort vector σ⃗."""

    index: tuple = ()

    def __str__(self):
        return f"nabla[{','.join(self.index)}] : {self.arity}"


@dataclass(frozen=True)
class SequentSignature(Signature):
    """A signature whose ``nabla[σ⃗]`` instances are created on demand."""

    _nabla: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def instantiate_nabla(self, sorts) -> NablaDecl:
        sorts = tuple(sorts)
        decl = self._nabla.get(sorts)
        if decl is None:
            for s in sorts:
                if not self.has_sort(s):
                    raise UnknownSort(s)
            decl = NablaDecl(f"nabla[{','.join(sorts)}]", (),
                             Arity((_v(JDG, syms=sorts),), JDG), sorts)
            decl = self._nabla.setdefault(sorts, decl)
        return decl

    def is_operator(self, name):
        return name == "nabla" or super().is_operator(name)

    def owns(self, decl):
        if isinstance(decl, NablaDecl):
            return self._nabla.get(decl.index) == decl or (
                all(map(self.has_sort, decl.index)) and self.instantiate_nabla(decl.index) == decl)
        return super().owns(decl)

    def instance(self, name, bracket=()):
        from .signature import OperatorInst
        if name == "nabla":
            return OperatorInst(self.instantiate_nabla(bracket), ())
        return super().instance(name, bracket)

    def extend(self, sorts=(), operators=()):
        base = declare_signature(self.sorts + tuple(sorts), self.operators + tuple(operators))
        return SequentSignature(base.sorts, base.operators)

    def __str__(self):
        return super().__str__() + "\nop nabla {σ⃗} : ({σ⃗}.jdg) jdg   # schema"


def sequent_signature() -> SequentSignature:
    base = declare_signature((EXP, PROP, TELE, JDG), (NIL, SNOC, HYP, SEQUENT, PRED_P, PRED))
    return SequentSignature(base.sorts, base.operators)


SIGMA_SEQ = sequent_signature()


def instantiate_nabla(sorts, sig: SequentSignature = SIGMA_SEQ) -> NablaDecl:
    return sig.instantiate_nabla(sorts)


# -- core constructors --------------------------------------------------------

def nil():
    return OpApp(SIGMA_SEQ.instance("nil"))


def snoc(u, h, a):
    return OpApp(SIGMA_SEQ.instance("snoc", (u,)), (h, a))


def hyp(u):
    return OpApp(SIGMA_SEQ.instance("hyp", (u,)))


def sequent(h, a):
    return OpApp(SIGMA_SEQ.instance("sequent"), (h, a))


def prop_p():
    return OpApp(SIGMA_SEQ.instance("P"))


def pred(e):
    return OpApp(SIGMA_SEQ.instance("pred"), (e,))


def nabla(symbols, body, sorts=None, sig: SequentSignature = SIGMA_SEQ):
    """``∇[σ⃗](ℵ{u⃗}.body)``; ``symbols`` is a list of ``(name, sort)`` or of
    names, in which case ``sorts`` must be given."""
    if sorts is None:
        sorts = tuple(s for _, s in symbols)
        names = tuple(n for n, _ in symbols)
    else:
        names = tuple(symbols)
    return OpApp(sig.instance("nabla", sorts), (Abstraction(tuple(zip(names, sorts)), (), body),))


def example_sequent():
    """``∇[exp,exp](ℵ{u,v}. ⋄, u:P, v:pred('u) ≫ pred('u))``"""
    body = sequent(snoc("v", snoc("u", nil(), prop_p()), pred(hyp("u"))), pred(hyp("u")))
    return nabla(("u", "v"), body, sorts=(EXP, EXP))


# -- wellformedness -----------------------------------------------------------

@dataclass(frozen=True)
class WfResult:
    ok: bool
    path: tuple = ()
    reason: str = ""

    def __bool__(self):
        return self.ok


_OK = WfResult(True)


def _is(decl, ref):
    return decl.name == ref.name and decl.param_sorts == ref.param_sorts and decl.arity == ref.arity


class _Wf:
    def __init__(self, sig):
        self.sig = sig

    def presupposes(self, syms, vars_, t, sort, path):
        try:
            found = check(MetaCtx(), syms, vars_, t, self.sig)
        except AbtError as e:
            return WfResult(False, path + e.path, e.message)
        if found != sort:
            return WfResult(False, path, f"expected sort {sort}, found {found}")
        return None

    def term(self, syms, vars_, t, path) -> WfResult:
        if isinstance(t, Var):
            return _OK
        if isinstance(t, MetaApp):
            return WfResult(False, path, "metavariables have no wellformedness rule")
        decl = t.inst.decl
        if isinstance(decl, NablaDecl):
            return self.abstraction(syms, vars_, t.args[0], path + (0,))
        if _is(decl, SEQUENT):
            res = self.term(syms, vars_, t.args[0].body, path + (0,))
            return res if not res else self.term(syms, vars_, t.args[1].body, path + (1,))
        if _is(decl, NIL):
            return _OK
        if _is(decl, SNOC):
            u = t.inst.params[0]
            if u not in syms:
                return WfResult(False, path, f"hypothesis symbol {u!r} is not in scope")
            inner = syms.remove(u)
            for i, (arg, sort) in enumerate(zip(t.args, (TELE, PROP))):
                bad = self.presupposes(inner, vars_, arg.body, sort, path + (i,))
                if bad is not None:
                    return bad
                res = self.term(inner, vars_, arg.body, path + (i,))
                if not res:
                    return res
            return _OK
        if decl.arity.target in (EXP, PROP):
            for i, arg in enumerate(t.args):
                res = self.abstraction(syms, vars_, arg, path + (i,))
                if not res:
                    return res
            return _OK
        return WfResult(False, path, f"no wellformedness rule for {decl.name}")

    def abstraction(self, syms, vars_, e, path) -> WfResult:
        body = e.body
        ren = {}
        for u, s in e.symbols:
            target = u
            if u in syms:
                target = fresh_name(u, syms.names() | set(ren.values()))
                ren[u] = target
            syms = syms.extend(target, s)
        if ren:
            body = rename_partial(body, ren)
        for x, s in e.variables:
            if x not in vars_:
                vars_ = vars_.extend(x, s)
        return self.term(syms, vars_, body, path)


def _ctxs(syms, vars_):
    return (syms if syms is not None else SymbolCtx(),
            vars_ if vars_ is not None else VarCtx())


def check_wf(syms: SymbolCtx, vars_: VarCtx, t, sort, sig: Signature = SIGMA_SEQ) -> WfResult:
    """Decide ``syms ‖ vars_ ⊢ t ∈wf sort``.

    The sorting judgment (with no metavariables) is checked first and its
    failure raises :class:`PresuppositionFailure`. A failing refinement
    returns a false :class:`WfResult` locating the first violation.
    """
    syms, vars_ = _ctxs(syms, vars_)
    try:
        found = check(MetaCtx(), syms, vars_, t, sig)
    except AbtError as e:
        raise PresuppositionFailure(e) from e
    if found != sort:
        from .errors import SortMismatch
        raise PresuppositionFailure(SortMismatch(sort, found))
    return _Wf(sig).term(syms, vars_, t, ())


def check_abs_wf(syms: SymbolCtx, vars_: VarCtx, e: Abstraction, valence: Valence,
                 sig: Signature = SIGMA_SEQ) -> WfResult:
    from .term import check_abs
    syms, vars_ = _ctxs(syms, vars_)
    try:
        check_abs(MetaCtx(), syms, vars_, e, sig, expected=valence)
    except AbtError as err:
        raise PresuppositionFailure(err) from err
    return _Wf(sig).abstraction(syms, vars_, e.annotated(valence), ())


def telescope_scoping_ok(syms: SymbolCtx, t) -> bool:
    """Direct scope check for snoc-chains: hypothesis names are distinct and
    in ``syms``, and each hypothesis mentions only names of ``syms`` other
    than its own and later ones."""
    from .algebra import free_syms
    chain = []
    while isinstance(t, OpApp) and _is(t.inst.decl, SNOC):
        chain.append((t.inst.params[0], t.args[1].body))
        t = t.args[0].body
    if not (isinstance(t, OpApp) and _is(t.inst.decl, NIL)):
        return False
    chain.reverse()
    names = [u for u, _ in chain]
    if len(set(names)) != len(names) or not set(names) <= syms.names():
        return False
    for i, (_, a) in enumerate(chain):
        allowed = syms.names() - set(names[i:])
        if not free_syms(a) <= allowed:
            return False
    return True


# -- notation -----------------------------------------------------------------

def desugar(text: str, sig: SequentSignature = SIGMA_SEQ):
    from .syntax import parse_term
    return parse_term(text, sig)


def resugar(t, unicode: bool = True) -> str:
    from .syntax import print_term
    return print_term(t, unicode=unicode, sugar=True)
