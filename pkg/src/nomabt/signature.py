"""Sorts, valences, arities and symbol-indexed operator families.

Sorts are plain strings. An operator family is presented finitely by a
declaration listing the sorts of its symbol parameters, so an instance is a
declaration together with one symbol per parameter slot.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import (ArityMismatch, DuplicateOperator, DuplicateSort,
                     SortMismatch, SymbolNotInDomain, UnboundSymbol,
                     UnknownOperator, UnknownSort)

Sort = str


def _seq(items):
    return ",".join(items)


@dataclass(frozen=True)
class Valence:
    """``{symbol_sorts}[variable_sorts].target``"""

    symbol_sorts: tuple[Sort, ...]
    variable_sorts: tuple[Sort, ...]
    target: Sort

    def __post_init__(self):
        object.__setattr__(self, "symbol_sorts", tuple(self.symbol_sorts))
        object.__setattr__(self, "variable_sorts", tuple(self.variable_sorts))

    def sorts(self):
        yield from self.symbol_sorts
        yield from self.variable_sorts
        yield self.target

    def __str__(self):
        syms = f"{{{_seq(self.symbol_sorts)}}}" if self.symbol_sorts else ""
        vars_ = f"[{_seq(self.variable_sorts)}]" if self.variable_sorts else ""
        return f"{syms}{vars_}.{self.target}"


@dataclass(frozen=True)
class Arity:
    valences: tuple[Valence, ...]
    target: Sort

    def __post_init__(self):
        object.__setattr__(self, "valences", tuple(self.valences))

    def sorts(self):
        for v in self.valences:
            yield from v.sorts()
        yield self.target

    def __str__(self):
        return f"({','.join(map(str, self.valences))}){self.target}"


@dataclass(frozen=True)
class OperatorDecl:
    name: str
    param_sorts: tuple[Sort, ...]
    arity: Arity

    def __post_init__(self):
        object.__setattr__(self, "param_sorts", tuple(self.param_sorts))

    def __str__(self):
        params = f" {{{_seq(self.param_sorts)}}}" if self.param_sorts else ""
        return f"{self.name}{params} : {self.arity}"


@dataclass(frozen=True)
class OperatorInst:
    """A declaration applied to concrete symbol parameters, e.g. ``get[u]``."""

    decl: OperatorDecl
    params: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "params", tuple(self.params))
        if len(self.params) != len(self.decl.param_sorts):
            raise ArityMismatch(len(self.decl.param_sorts), len(self.params),
                                what=f"parameters for {self.decl.name}")

    @property
    def name(self):
        return self.decl.name

    @property
    def arity(self):
        return self.decl.arity

    def __str__(self):
        if not self.params:
            return self.decl.name
        return f"{self.decl.name}[{_seq(self.params)}]"


@dataclass(frozen=True)
class Signature:
    sorts: tuple[Sort, ...] = ()
    operators: tuple[OperatorDecl, ...] = ()
    _by_name: Mapping[str, OperatorDecl] = field(default=None, init=False,
                                                 repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "sorts", tuple(self.sorts))
        object.__setattr__(self, "operators", tuple(self.operators))
        object.__setattr__(self, "_by_name", {op.name: op for op in self.operators})

    def has_sort(self, sort):
        return sort in self.sorts

    def operator(self, name) -> OperatorDecl:
        try:
            return self._by_name[name]
        except KeyError:
            raise UnknownOperator(name) from None

    def is_operator(self, name):
        return name in self._by_name

    def owns(self, decl):
        return self._by_name.get(decl.name) == decl

    def instance(self, name, bracket=()) -> OperatorInst:
        """Resolve ``name[bracket]`` as written in concrete syntax."""
        return OperatorInst(self.operator(name), tuple(bracket))

    def extend(self, sorts=(), operators=()) -> "Signature":
        return declare_signature(self.sorts + tuple(sorts),
                                 self.operators + tuple(operators))

    def __str__(self):
        lines = [f"sort {s}" for s in self.sorts]
        lines += [f"op {op}" for op in self.operators]
        return "\n".join(lines)


def _validate(sorts: Iterable[Sort], ops: Iterable[OperatorDecl]):
    seen = set()
    for s in sorts:
        if not s:
            raise UnknownSort(s)
        if s in seen:
            raise DuplicateSort(s)
        seen.add(s)
    names = set()
    for op in ops:
        if op.name in names:
            raise DuplicateOperator(op.name)
        names.add(op.name)
        for s in (*op.param_sorts, *op.arity.sorts()):
            if s not in seen:
                raise UnknownSort(s)


def declare_signature(sorts, ops) -> Signature:
    sorts, ops = tuple(sorts), tuple(ops)
    _validate(sorts, ops)
    return Signature(sorts, ops)


def _ctx_sort(ctx, u):
    # ctx is a SymbolCtx (anything with .get) or a plain mapping
    return ctx.get(u)


def check_operator(sig: Signature, ctx, inst: OperatorInst) -> Arity:
    """Decide ``ctx ⊩ inst : arity``; only membership in ``ctx`` is consulted."""
    if not sig.owns(inst.decl):
        raise UnknownOperator(inst.decl.name)
    for u, expected in zip(inst.params, inst.decl.param_sorts):
        found = _ctx_sort(ctx, u)
        if found is None:
            raise UnboundSymbol(u)
        if found != expected:
            raise SortMismatch(expected, found, subject=u)
    return inst.decl.arity


def _image(rho, u):
    mapping = rho.mapping if hasattr(rho, "mapping") else rho
    try:
        return mapping[u]
    except KeyError:
        raise SymbolNotInDomain(u) from None


def rename_operator(inst: OperatorInst, rho) -> OperatorInst:
    """Apply a symbol renaming pointwise to the parameters of ``inst``."""
    if not inst.params:
        return inst
    return OperatorInst(inst.decl, tuple(_image(rho, u) for u in inst.params))


def operator_support(inst: OperatorInst) -> frozenset[tuple[str, Sort]]:
    return frozenset(zip(inst.params, inst.decl.param_sorts))


def lambda_signature() -> Signature:
    exp = "exp"
    return declare_signature([exp], [
        OperatorDecl("lam", (), Arity([Valence((), (exp,), exp)], exp)),
        OperatorDecl("fix", (), Arity([Valence((), (exp,), exp)], exp)),
        OperatorDecl("ap", (), Arity([Valence((), (), exp)] * 2, exp)),
    ])


def assignables_signature() -> Signature:
    exp = "exp"
    return lambda_signature().extend(operators=[
        OperatorDecl("decl", (), Arity([Valence((), (), exp), Valence((exp,), (), exp)], exp)),
        OperatorDecl("get", (exp,), Arity([], exp)),
        OperatorDecl("set", (exp,), Arity([Valence((), (), exp)], exp)),
    ])
