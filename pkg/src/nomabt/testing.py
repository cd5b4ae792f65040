"""Seeded random generators for signatures, contexts, terms and environments.

Names come from small pools so that shadowing and would-be captures are
common. Generated terms are well-sorted by construction; the property suite
still re-checks them.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from .algebra import Environment
from .contexts import MetaCtx, Renaming, SymbolCtx, VarCtx
from .signature import Arity, OperatorDecl, OperatorInst, Signature, Valence, declare_signature
from .term import Abstraction, MetaApp, OpApp, Var

SYMBOL_POOL = ("u", "v", "w", "u1")
VAR_POOL = ("x", "y", "z", "x1")
META_POOL = ("m", "n", "k")


def random_valence(rng: random.Random, sorts, max_syms=2, max_vars=2, target=None) -> Valence:
    return Valence(tuple(rng.choice(sorts) for _ in range(rng.randint(0, max_syms))),
                   tuple(rng.choice(sorts) for _ in range(rng.randint(0, max_vars))),
                   target or rng.choice(sorts))


def random_signature(rng: random.Random, sorts=("a", "b"), extra_ops=6) -> Signature:
    """Per sort: a constant and a symbol-indexed leaf; then a few random
    operators, some of them binding symbols and variables."""
    ops = []
    for s in sorts:
        ops.append(OperatorDecl(f"c_{s}", (), Arity((), s)))
        ops.append(OperatorDecl(f"at_{s}", (rng.choice(sorts),), Arity((), s)))
    for i in range(extra_ops):
        target = rng.choice(sorts)
        valences = tuple(random_valence(rng, sorts) for _ in range(rng.randint(1, 3)))
        params = tuple(rng.choice(sorts) for _ in range(rng.randint(0, 1)))
        ops.append(OperatorDecl(f"op{i}", params, Arity(valences, target)))
    return declare_signature(sorts, ops)


def random_ctx(rng: random.Random, cls, pool, sorts, max_size=3):
    names = rng.sample(pool, rng.randint(0, min(max_size, len(pool))))
    return cls(tuple((n, rng.choice(sorts)) for n in names))


def random_meta_ctx(rng: random.Random, sorts, max_size=2) -> MetaCtx:
    names = rng.sample(META_POOL, rng.randint(0, max_size))
    return MetaCtx(tuple((n, random_valence(rng, sorts, 1, 2)) for n in names))


@dataclass
class TermGen:
    """Generates well-sorted terms over ``sig`` in given contexts."""

    sig: Signature
    rng: random.Random
    symbol_pool: tuple = SYMBOL_POOL
    var_pool: tuple = VAR_POOL
    allow_meta: bool = True

    def term(self, meta: MetaCtx, syms: dict, vars_: dict, sort, depth):
        rng = self.rng
        options = []
        candidates_v = [x for x, s in vars_.items() if s == sort]
        if candidates_v:
            options.append("var")
        metas = [(m, v) for m, v in (meta.bindings if self.allow_meta else ())
                 if v.target == sort and self._meta_ok(v, syms, depth)]
        if metas:
            options.append("meta")
        ops = [d for d in self.sig.operators if d.arity.target == sort
               and all(any(s == p for s in syms.values()) for p in d.param_sorts)
               and (depth > 0 or not d.arity.valences)]
        if ops:
            options += ["op"] * 3
        kind = rng.choice(options)
        if kind == "var":
            return Var(rng.choice(candidates_v))
        if kind == "meta":
            m, v = rng.choice(metas)
            params = tuple(self._symbol(syms, s) for s in v.symbol_sorts)
            args = tuple(self.term(meta, syms, vars_, s, depth - 1) for s in v.variable_sorts)
            return MetaApp(m, params, args)
        decl = rng.choice(ops)
        params = tuple(self._symbol(syms, s) for s in decl.param_sorts)
        args = tuple(self.abstraction(meta, syms, vars_, v, depth - 1) for v in decl.arity.valences)
        return OpApp(OperatorInst(decl, params), args)

    def _meta_ok(self, v, syms, depth):
        if v.variable_sorts and depth <= 0:
            return False
        return all(any(s == p for s in syms.values()) for p in v.symbol_sorts)

    def _symbol(self, syms, sort):
        return self.rng.choice(sorted(u for u, s in syms.items() if s == sort))

    def abstraction(self, meta, syms, vars_, v: Valence, depth):
        rng = self.rng
        us = rng.sample(self.symbol_pool, len(v.symbol_sorts))
        xs = rng.sample(self.var_pool, len(v.variable_sorts))
        syms2 = dict(syms)
        syms2.update(zip(us, v.symbol_sorts))
        vars2 = dict(vars_)
        vars2.update(zip(xs, v.variable_sorts))
        body = self.term(meta, syms2, vars2, v.target, depth)
        return Abstraction(tuple(zip(us, v.symbol_sorts)), tuple(zip(xs, v.variable_sorts)), body)


@dataclass
class Instance:
    """A random well-sorted judgment ``meta ▷ syms ‖ vars ⊢ term : sort``."""

    sig: Signature
    meta: MetaCtx
    syms: SymbolCtx
    vars: VarCtx
    term: object
    sort: str


def random_instance(rng: random.Random, sig: Signature | None = None, depth=None,
                    meta: MetaCtx | None = None, syms: SymbolCtx | None = None,
                    vars_: VarCtx | None = None, sort=None) -> Instance:
    sig = sig or random_signature(rng)
    sorts = sig.sorts
    meta = meta if meta is not None else random_meta_ctx(rng, sorts)
    syms = syms if syms is not None else random_ctx(rng, SymbolCtx, SYMBOL_POOL, sorts)
    vars_ = vars_ if vars_ is not None else random_ctx(rng, VarCtx, VAR_POOL, sorts)
    sort = sort or rng.choice(sorts)
    depth = rng.randint(0, 6) if depth is None else depth
    t = TermGen(sig, rng).term(meta, syms.as_dict(), vars_.as_dict(), sort, depth)
    return Instance(sig, meta, syms, vars_, t, sort)


def random_renaming(rng: random.Random, dom: SymbolCtx, pool=SYMBOL_POOL + ("v1", "w1", "p", "q"),
                    extra=1) -> Renaming:
    """A random injective sort-preserving renaming out of ``dom`` into a
    codomain that holds the images and ``extra`` unrelated symbols."""
    names = list(pool)
    rng.shuffle(names)
    images = names[:len(dom)]
    pairs = tuple(zip(dom, images))
    cod = [(v, dom[u]) for u, v in pairs]
    rest = names[len(dom):len(dom) + extra]
    sorts = sorted(set(dom.as_dict().values())) or ["a"]
    cod += [(v, rng.choice(sorts)) for v in rest]
    return Renaming(dom, SymbolCtx(tuple(cod)), pairs)


def random_alpha_variant(rng: random.Random, t, symbol_pool=SYMBOL_POOL + ("s1", "s2"),
                         var_pool=VAR_POOL + ("t1", "t2")):
    """Rename bound names at random, avoiding capture, so that the result is
    α-equivalent to ``t``."""
    from .algebra import free_syms, free_vars, rename_partial, subst_simultaneous

    def go(t):
        if isinstance(t, Var):
            return t
        if isinstance(t, MetaApp):
            return MetaApp(t.meta, t.params, tuple(go(a) for a in t.args))
        if isinstance(t, OpApp):
            return OpApp(t.inst, tuple(go(a) for a in t.args))
        body = t.body
        blocked_s = set(free_syms(body)) | set(t.symbol_names)
        blocked_v = set(free_vars(body)) | set(t.variable_names)
        new_s, new_v = [], []
        ren, sub = {}, []
        for u, s in t.symbols:
            options = [n for n in symbol_pool if n not in blocked_s] + [u]
            target = rng.choice(options)
            blocked_s.add(target)
            ren[u] = target
            new_s.append((target, s))
        for x, s in t.variables:
            options = [n for n in var_pool if n not in blocked_v] + [x]
            target = rng.choice(options)
            blocked_v.add(target)
            sub.append((x, Var(target)))
            new_v.append((target, s))
        body = subst_simultaneous(sub, rename_partial(body, ren))
        return Abstraction(tuple(new_s), tuple(new_v), go(body))

    return go(t)


def random_environment(rng: random.Random, sig: Signature, meta: MetaCtx, syms: SymbolCtx,
                       vars_: VarCtx, depth=2, closed_meta=True):
    """A random environment for the contexts and the target contexts it lands
    in. Metavariable values mention no free variables and, when
    ``closed_meta``, only symbols that ``sym_env`` fixes."""
    rho = random_renaming(rng, syms)
    target_syms = rho.cod
    target_vars = random_ctx(rng, VarCtx, ("p", "q", "r"), sig.sorts, 3)
    gen = TermGen(sig, rng, allow_meta=False)
    fixed = {u: s for u, s in target_syms.bindings if (not closed_meta) or u in rho.image()}
    fixed_src = {v: u for u, v in rho.pairs}
    meta_env = {}
    for m, v in meta.bindings:
        e = gen.abstraction(MetaCtx(), fixed, {}, v, depth)
        meta_env[m] = e
    var_env = {x: gen.term(MetaCtx(), target_syms.as_dict(), target_vars.as_dict(), s, depth)
               for x, s in vars_.bindings}
    env = Environment(meta_env, dict(rho.mapping), var_env)
    return env, target_syms, target_vars, fixed_src
