"""Seeded corpora shared by the unit and acceptance tests."""
from __future__ import annotations

import random

from nomabt.term import Abstraction, DuplicateName, MetaApp, OpApp, Var
from nomabt.testing import SYMBOL_POOL, VAR_POOL, random_alpha_variant, random_instance

from oracles import _all_names, binder_count, names_free


def _binder_spots(t, path=(), out=None):
    out = [] if out is None else out
    if isinstance(t, Abstraction):
        for i in range(len(t.symbols) + len(t.variables)):
            out.append((path, i))
        _binder_spots(t.body, path + ("b",), out)
    elif not isinstance(t, Var):
        for k, a in enumerate(t.args):
            _binder_spots(a, path + (k,), out)
    return out


def _replace_binder(t, path, i, name):
    if not path:
        syms, vars_ = list(t.symbols), list(t.variables)
        if i < len(syms):
            syms[i] = (name, syms[i][1])
        else:
            vars_[i - len(syms)] = (name, vars_[i - len(syms)][1])
        return Abstraction(tuple(syms), tuple(vars_), t.body)
    head, rest = path[0], path[1:]
    if head == "b":
        return Abstraction(t.symbols, t.variables, _replace_binder(t.body, rest, i, name))
    args = list(t.args)
    args[head] = _replace_binder(args[head], rest, i, name)
    if isinstance(t, MetaApp):
        return MetaApp(t.meta, t.params, tuple(args))
    return OpApp(t.inst, tuple(args))


def mutate_binder(rng: random.Random, t):
    """Rename one binder in place, without touching its body; names already in
    the term are preferred so that captures and unbindings are common."""
    spots = _binder_spots(t)
    if not spots:
        return None
    path, i = rng.choice(spots)
    syms, vars_ = _all_names(t, set(), set())
    node = t
    for h in path:
        node = node.body if h == "b" else node.args[h]
    is_sym = i < len(node.symbols)
    pool = sorted((syms if is_sym else vars_) | set(SYMBOL_POOL if is_sym else VAR_POOL))
    try:
        return _replace_binder(t, path, i, rng.choice(pool))
    except DuplicateName:
        return None


def uses_a_binder(t):
    if isinstance(t, Var):
        return False
    if isinstance(t, Abstraction):
        fs, fv = names_free(t.body)
        return bool(fs & set(t.symbol_names) or fv & set(t.variable_names)) or uses_a_binder(t.body)
    return any(uses_a_binder(a) for a in t.args)


def alpha_corpus(seed=0, size=500, max_binders=3):
    """Pairs ``(m, n)`` of well-sorted terms with 1..max_binders binders over
    name pools of four, each using some binder: a third are α-variants, the
    rest variants with one binder renamed in place."""
    rng = random.Random(seed)
    pairs = []
    while len(pairs) < size:
        inst = random_instance(rng, depth=rng.randint(1, 4))
        m = inst.term
        if not 1 <= binder_count(m) <= max_binders or not uses_a_binder(m):
            continue
        other = random_alpha_variant(rng, m, SYMBOL_POOL, VAR_POOL)
        if len(pairs) % 3:
            other = mutate_binder(rng, other)
        if other is not None:
            pairs.append((m, other))
    return pairs
