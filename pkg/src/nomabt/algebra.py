"""Free names, symbol renaming, substitution and the term-model interpretation.

Every operation returns one representative of the α-class of its result.
Binders are renamed only when they would capture something, and then with
:func:`~nomabt.term.fresh_name`, so outputs are deterministic.

All functions accept either a :class:`Term` or an :class:`Abstraction`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .contexts import MetaCtx, SymbolCtx, VarCtx
from .errors import (DuplicateTarget, IncompleteEnvironment, SymbolNotInDomain,
                     ValenceMismatch)
from .signature import OperatorInst
from .term import Abstraction, MetaApp, OpApp, Term, Var, fresh_name


# -- free names -------------------------------------------------------------

def free_vars(t) -> frozenset[str]:
    if isinstance(t, Var):
        return frozenset((t.name,))
    if isinstance(t, (MetaApp, OpApp)):
        out = set()
        for a in t.args:
            out |= free_vars(a)
        return frozenset(out)
    if isinstance(t, Abstraction):
        return free_vars(t.body) - set(t.variable_names)
    raise TypeError(f"not a term: {t!r}")


def free_syms(t) -> frozenset[str]:
    if isinstance(t, Var):
        return frozenset()
    if isinstance(t, MetaApp):
        out = set(t.params)
    elif isinstance(t, OpApp):
        out = {u for u, _ in _support(t.inst)}
    elif isinstance(t, Abstraction):
        return free_syms(t.body) - set(t.symbol_names)
    else:
        raise TypeError(f"not a term: {t!r}")
    for a in t.args:
        out |= free_syms(a)
    return frozenset(out)


def _support(inst):
    from .signature import operator_support
    return operator_support(inst)


# -- symbol renaming ----------------------------------------------------------

def _rename(t, mapping, strict):
    """Apply ``mapping`` to free symbols. Unmapped symbols are an error when
    ``strict`` and fixed otherwise. ``mapping`` need not be injective."""

    def sym(u):
        if u in mapping:
            return mapping[u]
        if strict:
            raise SymbolNotInDomain(u)
        return u

    if isinstance(t, Var):
        return t
    if isinstance(t, MetaApp):
        return MetaApp(t.meta, tuple(map(sym, t.params)),
                       tuple(_rename(a, mapping, strict) for a in t.args))
    if isinstance(t, OpApp):
        inst = t.inst
        if inst.params:
            inst = OperatorInst(inst.decl, tuple(map(sym, inst.params)))
        return OpApp(inst, tuple(_rename(a, mapping, strict) for a in t.args))
    if isinstance(t, Abstraction):
        bound = t.symbol_names
        if not bound:
            return Abstraction((), t.variables, _rename(t.body, mapping, strict))
        inner = {k: v for k, v in mapping.items() if k not in bound}
        others = free_syms(t.body) - set(bound)
        image = {_sym(inner, w, strict) for w in others}
        blocked = image | free_syms(t.body) | set(bound)
        new = []
        for u, s in t.symbols:
            target = u
            if u in image:
                target = fresh_name(u, blocked)
                blocked.add(target)
            inner[u] = target
            new.append((target, s))
        return Abstraction(tuple(new), t.variables, _rename(t.body, inner, strict))
    raise TypeError(f"not a term: {t!r}")


def _sym(mapping, u, strict):
    if u in mapping:
        return mapping[u]
    if strict:
        raise SymbolNotInDomain(u)
    return u


def rename(t, rho):
    """Act on ``t`` by the symbol renaming ``rho`` (a :class:`Renaming` or a
    plain mapping). Every free symbol of ``t`` must be in its domain."""
    mapping = rho.mapping if hasattr(rho, "mapping") else dict(rho)
    return _rename(t, mapping, strict=True)


def rename_partial(t, mapping):
    """Like :func:`rename` but symbols outside ``mapping`` stay put and the
    map may identify symbols. Used to instantiate abstractions."""
    return _rename(t, dict(mapping), strict=False)


# -- variable substitution --------------------------------------------------

def _subst(sigma, t):
    if isinstance(t, Var):
        return sigma.get(t.name, t)
    if isinstance(t, MetaApp):
        return MetaApp(t.meta, t.params, tuple(_subst(sigma, a) for a in t.args))
    if isinstance(t, OpApp):
        return OpApp(t.inst, tuple(_subst(sigma, a) for a in t.args))
    if isinstance(t, Abstraction):
        fv_body = free_vars(t.body)
        bound_vars = set(t.variable_names)
        live = {x: n for x, n in sigma.items() if x in fv_body and x not in bound_vars}
        if not live:
            return t
        range_fv, range_fs = set(), set()
        for n in live.values():
            range_fv |= free_vars(n)
            range_fs |= free_syms(n)
        body = t.body
        symbols = t.symbols
        clash = [u for u in t.symbol_names if u in range_fs]
        if clash:
            blocked = range_fs | free_syms(body) | set(t.symbol_names)
            ren = {}
            for u in clash:
                ren[u] = fresh_name(u, blocked)
                blocked.add(ren[u])
            body = _rename(body, ren, strict=False)
            symbols = tuple((ren.get(u, u), s) for u, s in symbols)
        variables = t.variables
        clash = [y for y in t.variable_names if y in range_fv]
        if clash:
            blocked = range_fv | fv_body | bound_vars | set(live)
            for y in clash:
                y2 = fresh_name(y, blocked)
                blocked.add(y2)
                live[y] = Var(y2)
            variables = tuple((live[y].name if y in clash else y, s) for y, s in variables)
        return Abstraction(symbols, variables, _subst(live, body))
    raise TypeError(f"not a term: {t!r}")


def subst_simultaneous(pairs, t):
    """``[N⃗/x⃗]t``; replacements are not re-scanned for the other targets."""
    sigma = {}
    for x, n in pairs:
        if x in sigma:
            raise DuplicateTarget(x)
        sigma[x] = n
    if not sigma:
        return t
    return _subst(sigma, t)


def subst(n, x, t):
    """``[n/x]t``, capture-avoiding."""
    return _subst({x: n}, t)


# -- metavariable substitution ------------------------------------------------

def instantiate(e: Abstraction, params, args):
    """Instantiate ``ℵ{u⃗}[x⃗].N`` at symbols ``params`` and terms ``args``."""
    params, args = tuple(params), tuple(args)
    if len(params) != len(e.symbols) or len(args) != len(e.variables):
        raise ValenceMismatch(f"{len(e.symbols)} symbols and {len(e.variables)} arguments",
                              f"{len(params)} symbols and {len(args)} arguments")
    body = rename_partial(e.body, dict(zip(e.symbol_names, params)))
    return subst_simultaneous(zip(e.variable_names, args), body)


def _msubst(e, m, t, fs_e, fv_e, path):
    if isinstance(t, Var):
        return t
    if isinstance(t, MetaApp):
        args = tuple(_msubst(e, m, a, fs_e, fv_e, path + (i,)) for i, a in enumerate(t.args))
        if t.meta != m:
            return MetaApp(t.meta, t.params, args)
        try:
            return instantiate(e, t.params, args)
        except ValenceMismatch as err:
            err.path = path
            raise
    if isinstance(t, OpApp):
        return OpApp(t.inst, tuple(_msubst(e, m, a, fs_e, fv_e, path + (i,))
                                   for i, a in enumerate(t.args)))
    if isinstance(t, Abstraction):
        body, symbols, variables = t.body, t.symbols, t.variables
        clash = [u for u in t.symbol_names if u in fs_e]
        if clash:
            blocked = set(fs_e) | free_syms(body) | set(t.symbol_names)
            ren = {}
            for u in clash:
                ren[u] = fresh_name(u, blocked)
                blocked.add(ren[u])
            body = _rename(body, ren, strict=False)
            symbols = tuple((ren.get(u, u), s) for u, s in symbols)
        clash = [y for y in t.variable_names if y in fv_e]
        if clash:
            blocked = set(fv_e) | free_vars(body) | set(t.variable_names)
            ren = {}
            for y in clash:
                ren[y] = fresh_name(y, blocked)
                blocked.add(ren[y])
            body = _subst({y: Var(y2) for y, y2 in ren.items()}, body)
            variables = tuple((ren.get(y, y), s) for y, s in variables)
        return Abstraction(symbols, variables, _msubst(e, m, body, fs_e, fv_e, path))
    raise TypeError(f"not a term: {t!r}")


def msubst(e: Abstraction, m: str, t, expected=None):
    """``[e/m]t``: replace every ``m{v⃗}(M⃗)`` by ``e`` instantiated at ``v⃗``
    and the (already substituted) ``M⃗``.

    ``expected``, a valence, is compared with ``e``'s annotated binder sorts.
    """
    if expected is not None:
        got_s = tuple(s for _, s in e.symbols)
        got_v = tuple(s for _, s in e.variables)
        if (len(got_s) != len(expected.symbol_sorts) or len(got_v) != len(expected.variable_sorts)
                or any(g is not None and g != w for g, w in zip(got_s + got_v,
                       expected.symbol_sorts + expected.variable_sorts))):
            raise ValenceMismatch(expected, _shape(e))
    return _msubst(e, m, t, free_syms(e), free_vars(e), ())


def _shape(e):
    syms = ",".join(s or "?" for _, s in e.symbols)
    vars_ = ",".join(s or "?" for _, s in e.variables)
    return f"{{{syms}}}[{vars_}]"


# -- interpretation in the term model ----------------------------------------

@dataclass(frozen=True)
class Environment:
    """Values for the metavariables, symbols and variables of a judgment."""

    meta_env: Mapping[str, Abstraction] = field(default_factory=dict)
    sym_env: Mapping[str, str] = field(default_factory=dict)
    var_env: Mapping[str, Term] = field(default_factory=dict)

    def blocked(self):
        syms, vars_ = set(self.sym_env.values()), set()
        for e in self.meta_env.values():
            syms |= free_syms(e)
            vars_ |= free_vars(e)
        for n in self.var_env.values():
            syms |= free_syms(n)
            vars_ |= free_vars(n)
        return syms, vars_


def identity_environment(meta: MetaCtx, syms: SymbolCtx, vars_: VarCtx) -> Environment:
    meta_env = {}
    for m, v in meta.bindings:
        us = tuple((f"u{i}", s) for i, s in enumerate(v.symbol_sorts))
        xs = tuple((f"x{i}", s) for i, s in enumerate(v.variable_sorts))
        meta_env[m] = Abstraction(us, xs, MetaApp(m, tuple(u for u, _ in us),
                                                  tuple(Var(x) for x, _ in xs)))
    return Environment(meta_env, {u: u for u in syms}, {x: Var(x) for x in vars_})


class _Interp:
    def __init__(self, env):
        self.env = env

    def term(self, t, syms, vars_, bsyms, bvars):
        if isinstance(t, Var):
            if t.name not in vars_:
                raise IncompleteEnvironment(t.name)
            return vars_[t.name]
        if isinstance(t, MetaApp):
            e = self.env.meta_env.get(t.meta)
            if e is None:
                raise IncompleteEnvironment(t.meta)
            params = tuple(self.symbol(syms, u) for u in t.params)
            args = tuple(self.term(a, syms, vars_, bsyms, bvars) for a in t.args)
            return instantiate(e, params, args)
        if isinstance(t, OpApp):
            inst = t.inst
            if inst.params:
                inst = OperatorInst(inst.decl, tuple(self.symbol(syms, u) for u in inst.params))
            return OpApp(inst, tuple(self.abstraction(a, syms, vars_, bsyms, bvars)
                                     for a in t.args))
        raise TypeError(f"not a term: {t!r}")

    def symbol(self, syms, u):
        if u not in syms:
            raise IncompleteEnvironment(u)
        return syms[u]

    def abstraction(self, e, syms, vars_, bsyms, bvars):
        if e.is_bare:
            return Abstraction((), (), self.term(e.body, syms, vars_, bsyms, bvars))
        syms, vars_ = dict(syms), dict(vars_)
        bsyms, bvars = set(bsyms), set(bvars)
        new_s, new_v = [], []
        for u, s in e.symbols:
            target = fresh_name(u, bsyms) if u in bsyms else u
            bsyms.add(target)
            syms[u] = target
            new_s.append((target, s))
        for x, s in e.variables:
            target = fresh_name(x, bvars) if x in bvars else x
            bvars.add(target)
            vars_[x] = Var(target)
            new_v.append((target, s))
        return Abstraction(tuple(new_s), tuple(new_v),
                           self.term(e.body, syms, vars_, bsyms, bvars))


def interpret(meta: MetaCtx, syms: SymbolCtx, vars_: VarCtx, t, env: Environment):
    """Interpret ``t`` in the free term model at ``env``.

    Metavariables are instantiated with their ``meta_env`` abstraction,
    free symbols renamed by ``sym_env`` and free variables replaced by
    ``var_env``, all in one capture-avoiding pass. Every name bound in the
    contexts must have an entry.
    """
    for m in (meta or ()):
        if m not in env.meta_env:
            raise IncompleteEnvironment(m)
    for u in (syms or ()):
        if u not in env.sym_env:
            raise IncompleteEnvironment(u)
    for x in (vars_ or ()):
        if x not in env.var_env:
            raise IncompleteEnvironment(x)
    bsyms, bvars = env.blocked()
    interp = _Interp(env)
    if isinstance(t, Abstraction):
        return interp.abstraction(t, env.sym_env, env.var_env, bsyms, bvars)
    return interp.term(t, dict(env.sym_env), dict(env.var_env), bsyms, bvars)
