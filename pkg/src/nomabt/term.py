"""Abstract binding trees, the sorting judgment, and α-equivalence.

Terms carry the names the user wrote. α-equivalence is decided by mapping
bound occurrences to (binder depth, slot) coordinates; every abstraction
counts as one binder level, including the empty ones that wrap plain
operator arguments.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .contexts import MetaCtx, SymbolCtx, VarCtx
from .errors import (ArityMismatch, DuplicateName, SortMismatch,
                     UnboundMetavariable, UnboundSymbol, UnboundVariable,
                     UnknownOperator)
from .signature import OperatorInst, Signature, Sort, Valence


class Term:
    __slots__ = ()

    def __str__(self):
        from .syntax import print_term
        return print_term(self)


@dataclass(frozen=True, repr=False)
class Var(Term):
    name: str

    def __repr__(self):
        return f"Var({self.name!r})"


@dataclass(frozen=True, repr=False)
class MetaApp(Term):
    meta: str
    params: tuple[str, ...] = ()
    args: tuple[Term, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "params", tuple(self.params))
        object.__setattr__(self, "args", tuple(self.args))

    def __repr__(self):
        return f"MetaApp({self.meta!r}, {self.params!r}, {self.args!r})"


@dataclass(frozen=True, repr=False)
class OpApp(Term):
    inst: OperatorInst
    args: tuple["Abstraction", ...] = ()

    def __post_init__(self):
        args = tuple(a if isinstance(a, Abstraction) else Abstraction((), (), a)
                     for a in self.args)
        object.__setattr__(self, "args", args)

    @property
    def name(self):
        return self.inst.decl.name

    @property
    def params(self):
        return self.inst.params

    def __repr__(self):
        return f"OpApp({str(self.inst)!r}, {self.args!r})"


def _binders(entries):
    out = []
    for e in entries:
        name, sort = (e, None) if isinstance(e, str) else e
        out.append((name, sort))
    names = [n for n, _ in out]
    for i, n in enumerate(names):
        if n in names[:i]:
            raise DuplicateName(n, "binder")
    return tuple(out)


@dataclass(frozen=True, repr=False)
class Abstraction:
    """``ℵ{u⃗}[x⃗].body``; binder entries are ``(name, sort)`` with the sort
    optional (``None``) when it is only known from the enclosing operator."""

    symbols: tuple = ()
    variables: tuple = ()
    body: Optional[Term] = None

    def __post_init__(self):
        object.__setattr__(self, "symbols", _binders(self.symbols))
        object.__setattr__(self, "variables", _binders(self.variables))
        if not isinstance(self.body, Term):
            raise TypeError("abstraction body must be a Term")

    @property
    def symbol_names(self):
        return tuple(n for n, _ in self.symbols)

    @property
    def variable_names(self):
        return tuple(n for n, _ in self.variables)

    @property
    def is_bare(self):
        return not self.symbols and not self.variables

    def annotated(self, valence: Valence) -> "Abstraction":
        """Fill in binder sorts from ``valence`` (counts must already agree)."""
        return Abstraction(tuple(zip(self.symbol_names, valence.symbol_sorts)),
                           tuple(zip(self.variable_names, valence.variable_sorts)),
                           self.body)

    def __str__(self):
        from .syntax import print_abstraction
        return print_abstraction(self)

    def __repr__(self):
        return f"Abstraction({self.symbols!r}, {self.variables!r}, {self.body!r})"


def bind(body, symbols=(), variables=()) -> Abstraction:
    return Abstraction(symbols, variables, body)


def op(inst_or_decl, *args, params=()):
    inst = inst_or_decl if isinstance(inst_or_decl, OperatorInst) else OperatorInst(inst_or_decl, params)
    return OpApp(inst, tuple(args))


def fresh_name(base: str, blocked) -> str:
    """Smallest ``stem<k>`` (k ≥ 1) not in ``blocked``; ``stem`` is ``base``
    without trailing digits."""
    stem = base.rstrip("0123456789") or base
    k = 1
    while f"{stem}{k}" in blocked:
        k += 1
    return f"{stem}{k}"


def names_in(t, acc_syms=None, acc_vars=None):
    """Every symbol and variable name occurring anywhere in ``t``, bound or free."""
    syms = set() if acc_syms is None else acc_syms
    vars_ = set() if acc_vars is None else acc_vars
    stack = [t]
    while stack:
        t = stack.pop()
        if isinstance(t, Var):
            vars_.add(t.name)
        elif isinstance(t, MetaApp):
            syms.update(t.params)
            stack.extend(t.args)
        elif isinstance(t, OpApp):
            syms.update(t.inst.params)
            stack.extend(t.args)
        elif isinstance(t, Abstraction):
            syms.update(t.symbol_names)
            vars_.update(t.variable_names)
            stack.append(t.body)
    return syms, vars_


# -- sorting --------------------------------------------------------------

class _Checker:
    """Carries the ambient signature and the names to avoid when a binder
    collides with the context and has to be α-renamed."""

    def __init__(self, sig, meta, avoid_syms, avoid_vars):
        self.sig = sig
        self.meta = meta
        self.avoid_syms = avoid_syms
        self.avoid_vars = avoid_vars

    def symbol(self, syms, salias, u, path):
        name = salias.get(u, u)
        sort = syms.get(name)
        if sort is None:
            raise UnboundSymbol(u, path)
        return sort

    def term(self, t, syms, vars_, salias, valias, path) -> Sort:
        if isinstance(t, Var):
            sort = vars_.get(valias.get(t.name, t.name))
            if sort is None:
                raise UnboundVariable(t.name, path)
            return sort
        if isinstance(t, MetaApp):
            v = self.meta.get(t.meta)
            if v is None:
                raise UnboundMetavariable(t.meta, path)
            if len(t.params) != len(v.symbol_sorts):
                raise ArityMismatch(len(v.symbol_sorts), len(t.params), path,
                                    f"parameters for {t.meta}")
            for u, expected in zip(t.params, v.symbol_sorts):
                found = self.symbol(syms, salias, u, path)
                if found != expected:
                    raise SortMismatch(expected, found, path, u)
            if len(t.args) != len(v.variable_sorts):
                raise ArityMismatch(len(v.variable_sorts), len(t.args), path,
                                    f"arguments for {t.meta}")
            for i, (arg, expected) in enumerate(zip(t.args, v.variable_sorts)):
                found = self.term(arg, syms, vars_, salias, valias, path + (i,))
                if found != expected:
                    raise SortMismatch(expected, found, path + (i,))
            return v.target
        if isinstance(t, OpApp):
            decl = t.inst.decl
            if self.sig is not None and not self.sig.owns(decl):
                e = UnknownOperator(decl.name)
                e.path = path
                raise e
            for u, expected in zip(t.inst.params, decl.param_sorts):
                found = self.symbol(syms, salias, u, path)
                if found != expected:
                    raise SortMismatch(expected, found, path, u)
            valences = decl.arity.valences
            if len(t.args) != len(valences):
                raise ArityMismatch(len(valences), len(t.args), path,
                                    f"arguments for {decl.name}")
            for i, (arg, v) in enumerate(zip(t.args, valences)):
                self.abstraction(arg, syms, vars_, salias, valias, path + (i,), v)
            return decl.arity.target
        raise TypeError(f"not a term: {t!r}")

    def _enter(self, names, sorts, ctx, alias, avoid):
        alias = dict(alias)
        for name, sort in zip(names, sorts):
            target = name
            if name in ctx:
                target = fresh_name(name, ctx.names() | avoid)
            ctx = ctx.extend(target, sort)
            alias[name] = target
        return ctx, alias

    def abstraction(self, e, syms, vars_, salias, valias, path, expected=None) -> Valence:
        if expected is not None:
            if len(e.symbols) != len(expected.symbol_sorts):
                raise ArityMismatch(len(expected.symbol_sorts), len(e.symbols), path,
                                    "bound symbols")
            if len(e.variables) != len(expected.variable_sorts):
                raise ArityMismatch(len(expected.variable_sorts), len(e.variables), path,
                                    "bound variables")
            for (name, ann), want in zip(e.symbols + e.variables,
                                         expected.symbol_sorts + expected.variable_sorts):
                if ann is not None and ann != want:
                    raise SortMismatch(want, ann, path, name)
            ssorts, vsorts = expected.symbol_sorts, expected.variable_sorts
        else:
            ssorts = tuple(s for _, s in e.symbols)
            vsorts = tuple(s for _, s in e.variables)
            for name, s in e.symbols + e.variables:
                if s is None:
                    raise SortMismatch("an annotated binder", "no sort", path, name)
        syms, salias = self._enter(e.symbol_names, ssorts, syms, salias, self.avoid_syms)
        vars_, valias = self._enter(e.variable_names, vsorts, vars_, valias, self.avoid_vars)
        body = self.term(e.body, syms, vars_, salias, valias, path)
        if expected is not None and body != expected.target:
            raise SortMismatch(expected.target, body, path)
        return Valence(ssorts, vsorts, body)


def _ctxs(meta, syms, vars_):
    return (meta if meta is not None else MetaCtx(),
            syms if syms is not None else SymbolCtx(),
            vars_ if vars_ is not None else VarCtx())


def check(meta: MetaCtx, syms: SymbolCtx, vars_: VarCtx, t: Term,
          sig: Signature | None = None) -> Sort:
    """The unique sort ``τ`` with ``meta ▷ syms ‖ vars_ ⊢ t : τ``.

    Raises a :class:`SortingError` whose ``path`` lists argument indices from
    the root down to the offending subterm. ``sig`` additionally checks that
    every operator belongs to the signature.
    """
    meta, syms, vars_ = _ctxs(meta, syms, vars_)
    avoid_s, avoid_v = names_in(t)
    checker = _Checker(sig, meta, frozenset(avoid_s), frozenset(avoid_v))
    return checker.term(t, syms, vars_, {}, {}, ())


def check_abs(meta: MetaCtx, syms: SymbolCtx, vars_: VarCtx, e: Abstraction,
              sig: Signature | None = None, expected: Valence | None = None) -> Valence:
    meta, syms, vars_ = _ctxs(meta, syms, vars_)
    avoid_s, avoid_v = names_in(e)
    checker = _Checker(sig, meta, frozenset(avoid_s), frozenset(avoid_v))
    return checker.abstraction(e, syms, vars_, {}, {}, (), expected)


def check_as(meta, syms, vars_, t, sort, sig=None):
    found = check(meta, syms, vars_, t, sig)
    if found != sort:
        raise SortMismatch(sort, found)
    return found


def is_well_sorted(meta, syms, vars_, t, sig=None):
    from .errors import AbtError
    try:
        return check(meta, syms, vars_, t, sig)
    except AbtError:
        return None


# -- α-equivalence ----------------------------------------------------------

def _ref(name, stack, which):
    for depth, frame in enumerate(reversed(stack)):
        names = frame[which]
        if name in names:
            return ("b", depth, names.index(name))
    return ("f", name)


def _canon(t, stack):
    if isinstance(t, Var):
        return ("var", _ref(t.name, stack, 1))
    if isinstance(t, MetaApp):
        return ("meta", t.meta, tuple(_ref(u, stack, 0) for u in t.params),
                tuple(_canon(a, stack) for a in t.args))
    if isinstance(t, OpApp):
        return ("op", t.inst.decl, tuple(_ref(u, stack, 0) for u in t.inst.params),
                tuple(_canon(a, stack) for a in t.args))
    if isinstance(t, Abstraction):
        stack.append((t.symbol_names, t.variable_names))
        body = _canon(t.body, stack)
        stack.pop()
        return ("abs", len(t.symbols), len(t.variables), body)
    raise TypeError(f"not a term: {t!r}")


def canonicalize(t):
    """Nameless form of ``t``: bound names become ``("b", depth, slot)``,
    free names stay as ``("f", name)``. Binder sorts are not part of it."""
    return _canon(t, [])


def alpha_eq(m, n) -> bool:
    return canonicalize(m) == canonicalize(n)


def show_canonical(c) -> str:
    """Render a canonical form, e.g. ``lam([•].⟨0,0⟩)``."""
    kind = c[0]

    def ref(r):
        return r[1] if r[0] == "f" else f"⟨{r[1]},{r[2]}⟩"

    if kind == "var":
        return ref(c[1])
    if kind == "meta":
        params = f"{{{','.join(map(ref, c[2]))}}}" if c[2] else ""
        args = f"({', '.join(map(show_canonical, c[3]))})" if c[3] else ""
        return f"{c[1]}{params}{args}"
    if kind == "op":
        params = f"[{','.join(map(ref, c[2]))}]" if c[2] else ""
        args = f"({', '.join(map(show_canonical, c[3]))})" if c[3] else ""
        return f"{c[1].name}{params}{args}"
    if kind == "abs":
        _, ns, nv, body = c
        if not ns and not nv:
            return show_canonical(body)
        syms = "{" + ",".join("•" * ns) + "}" if ns else ""
        vars_ = "[" + ",".join("•" * nv) + "]" if nv else ""
        return f"{syms}{vars_}.{show_canonical(body)}"
    raise ValueError(kind)
