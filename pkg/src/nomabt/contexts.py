"""Symbol, variable and metavariable contexts, and injective renamings.

Contexts keep their bindings in order for printing, but compare as finite
maps: exchange holds definitionally.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .errors import (ContextMismatch, DuplicateName, DuplicateSymbol,
                     IncompleteMap, NotFound, NotInjective, SortViolation)
from .signature import Valence


@dataclass(frozen=True, eq=False)
class _Ctx:
    bindings: tuple = ()
    _map: Mapping = field(default=None, init=False, repr=False)

    _duplicate = DuplicateName

    def __post_init__(self):
        bindings = tuple((name, val) for name, val in self.bindings)
        seen = {}
        for name, val in bindings:
            if name in seen:
                raise self._duplicate(name)
            seen[name] = val
        object.__setattr__(self, "bindings", bindings)
        object.__setattr__(self, "_map", seen)

    @classmethod
    def of(cls, *pairs, **kw):
        return cls(tuple(pairs) + tuple(kw.items()))

    def __eq__(self, other):
        return type(self) is type(other) and self._map == other._map

    def __hash__(self):
        return hash((type(self).__name__, frozenset(self._map.items())))

    def __contains__(self, name):
        return name in self._map

    def __iter__(self):
        return iter(name for name, _ in self.bindings)

    def __len__(self):
        return len(self.bindings)

    def get(self, name, default=None):
        return self._map.get(name, default)

    def __getitem__(self, name):
        try:
            return self._map[name]
        except KeyError:
            raise NotFound(name) from None

    def names(self):
        return frozenset(self._map)

    def as_dict(self):
        return dict(self._map)

    def extend(self, name, value):
        if name in self._map:
            raise self._duplicate(name)
        return type(self)(self.bindings + ((name, value),))

    def extend_many(self, pairs):
        ctx = self
        for name, value in pairs:
            ctx = ctx.extend(name, value)
        return ctx

    def remove(self, name):
        if name not in self._map:
            raise NotFound(name)
        return type(self)(tuple(b for b in self.bindings if b[0] != name))

    def restrict(self, names):
        return type(self)(tuple(b for b in self.bindings if b[0] in names))

    def __str__(self):
        if not self.bindings:
            return "."
        return ", ".join(f"{n}:{v}" for n, v in self.bindings)

    def __repr__(self):
        return f"{type(self).__name__}({str(self)!r})"


class SymbolCtx(_Ctx):
    _duplicate = DuplicateSymbol


class VarCtx(_Ctx):
    pass


class MetaCtx(_Ctx):
    def __post_init__(self):
        super().__post_init__()
        for name, val in self.bindings:
            if not isinstance(val, Valence):
                raise TypeError(f"metavariable {name!r} must be bound to a Valence")


def extend_symbols(ctx: SymbolCtx, u, sort) -> SymbolCtx:
    return ctx.extend(u, sort)


def lookup(ctx, name):
    return ctx[name]


@dataclass(frozen=True, eq=False)
class Renaming:
    """An injective, sort-preserving map ``dom ↪ cod`` given by explicit pairs."""

    dom: SymbolCtx
    cod: SymbolCtx
    pairs: tuple = ()
    mapping: Mapping = field(default=None, init=False, repr=False)

    def __post_init__(self):
        mapping = dict(self.pairs)
        object.__setattr__(self, "pairs", tuple(sorted(mapping.items())))
        object.__setattr__(self, "mapping", mapping)
        for u in self.dom:
            if u not in mapping:
                raise IncompleteMap(u)
        back = {}
        for u, v in self.pairs:
            if u not in self.dom:
                raise IncompleteMap(u)
            if v not in self.cod or self.cod[v] != self.dom[u]:
                raise SortViolation(u)
            if v in back:
                raise NotInjective(back[v], u)
            back[v] = u

    def __call__(self, u):
        return self.mapping[u]

    def __eq__(self, other):
        return (isinstance(other, Renaming) and self.dom == other.dom
                and self.cod == other.cod and self.mapping == other.mapping)

    def __hash__(self):
        return hash((self.dom, self.cod, self.pairs))

    def image(self):
        return frozenset(self.mapping.values())

    def __str__(self):
        body = ", ".join(f"{u}↦{v}" for u, v in self.pairs)
        return f"[{body}] : {self.dom} ↪ {self.cod}"


def make_renaming(dom: SymbolCtx, cod: SymbolCtx, pairs) -> Renaming:
    pairs = tuple(pairs)
    seen = {}
    for u, v in pairs:
        if u in seen and seen[u] != v:
            raise ContextMismatch(f"symbol {u!r} is mapped twice")
        seen[u] = v
    return Renaming(dom, cod, pairs)


def identity_renaming(ctx: SymbolCtx) -> Renaming:
    return Renaming(ctx, ctx, tuple((u, u) for u in ctx))


def compose_renamings(r2: Renaming, r1: Renaming) -> Renaming:
    """``r2 ∘ r1``: first ``r1``, then ``r2``."""
    if r1.cod != r2.dom:
        raise ContextMismatch(f"cannot compose: {r1.cod} is not {r2.dom}")
    return Renaming(r1.dom, r2.cod, tuple((u, r2(r1(u))) for u in r1.dom))


def inverse_renaming(r: Renaming) -> Renaming:
    if len(r.dom) != len(r.cod):
        raise ContextMismatch("only bijective renamings have inverses")
    return Renaming(r.cod, r.dom, tuple((v, u) for u, v in r.pairs))
