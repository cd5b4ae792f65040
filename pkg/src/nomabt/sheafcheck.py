"""Finite copresheaves on a truncated category of symbol contexts.

The site has as objects the sorted symbol contexts of bounded size and as
arrows all injective sort-preserving renamings. Objects of size at most
``max_size`` form the *core*; ``margin`` extra layers of larger contexts are
kept so that parallel pairs out of core objects have room to separate names.
The sheaf condition and pullback preservation are checked at core objects;
support quantifies over the whole site.

A skeletal site keeps one context per vector of sort counts. Presheaves on a
category and on its skeleton correspond, so enumeration uses the skeleton.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from .contexts import Renaming, SymbolCtx
from .errors import ElementNotInFiber, NotASheaf


Obj = tuple  # ((name, sort), ...)


@dataclass(frozen=True)
class Arrow:
    """``images[i]`` is the position in ``cod`` of the ``i``-th binding of ``dom``."""

    id: int
    dom: int
    cod: int
    images: tuple


class TruncatedSite:
    def __init__(self, sorts: Sequence[str], max_size: int, pool: Optional[Sequence[str]] = None,
                 margin: int = 1, skeletal: bool = False, pullback_scope: str = "all"):
        if pullback_scope not in ("all", "core"):
            raise ValueError("pullback_scope is 'all' or 'core'")
        self.pullback_scope = pullback_scope
        self.sorts = tuple(sorts)
        self.max_size = max_size
        self.margin = margin
        self.skeletal = skeletal
        top = max_size + margin
        if pool is None:
            pool = tuple("uvwxyzabcdefgh"[:top]) if not skeletal else ()
        self.pool = tuple(pool)
        if not skeletal and len(self.pool) < top:
            raise ValueError(f"a pool of {len(self.pool)} names cannot populate contexts of size {top}")
        self.objects: list[Obj] = self._objects(top)
        self.index = {o: i for i, o in enumerate(self.objects)}
        self.core = frozenset(i for i, o in enumerate(self.objects) if len(o) <= max_size)
        self.arrows: list[Arrow] = []
        self.arrow_index = {}
        self.hom = {}
        self.out = {i: [] for i in range(len(self.objects))}
        self.into = {i: [] for i in range(len(self.objects))}
        for i, a in enumerate(self.objects):
            for j, b in enumerate(self.objects):
                for images in self._maps(a, b):
                    arr = Arrow(len(self.arrows), i, j, images)
                    self.arrows.append(arr)
                    self.arrow_index[(i, j, images)] = arr.id
                    self.hom.setdefault((i, j), []).append(arr.id)
                    self.out[i].append(arr.id)
                    self.into[j].append(arr.id)
        self.identity = [self.arrow_index[(i, i, tuple(range(len(o))))]
                         for i, o in enumerate(self.objects)]
        self._compose = {}
        self._groups = {}
        self._cospans = None
        self._composites = None

    def _objects(self, top):
        out = []
        if self.skeletal:
            for counts in itertools.product(range(top + 1), repeat=len(self.sorts)):
                if sum(counts) <= top:
                    out.append(tuple((f"{s}{k}", s) for s, n in zip(self.sorts, counts)
                                     for k in range(n)))
            out.sort(key=len)
            return out
        for size in range(top + 1):
            for names in itertools.combinations(self.pool, size):
                for sorts in itertools.product(self.sorts, repeat=size):
                    out.append(tuple(zip(names, sorts)))
        return out

    @staticmethod
    def _maps(a, b):
        for images in itertools.permutations(range(len(b)), len(a)):
            if all(a[i][1] == b[j][1] for i, j in enumerate(images)):
                yield images

    def __repr__(self):
        kind = "skeletal " if self.skeletal else ""
        return (f"TruncatedSite({kind}sorts={list(self.sorts)}, max_size={self.max_size}, "
                f"margin={self.margin}, pullbacks={self.pullback_scope}, "
                f"objects={len(self.objects)}, arrows={len(self.arrows)})")

    def context(self, obj: int) -> SymbolCtx:
        return SymbolCtx(self.objects[obj])

    def object_of(self, ctx) -> int:
        key = tuple(ctx.bindings) if isinstance(ctx, SymbolCtx) else tuple(ctx)
        key = tuple(sorted(key, key=lambda b: self._name_order(b[0])))
        try:
            return self.index[key]
        except KeyError:
            raise ValueError(f"{SymbolCtx(key)} is not an object of this site") from None

    def _name_order(self, name):
        if name in self.pool:
            return (self.pool.index(name), "")
        return (len(self.pool), name)

    def arrow_of(self, rho: Renaming) -> Arrow:
        """The site arrow for a renaming between two site objects."""
        dom, cod = self.object_of(rho.dom), self.object_of(rho.cod)
        cod_names = [n for n, _ in self.objects[cod]]
        images = tuple(cod_names.index(rho(n)) for n, _ in self.objects[dom])
        return self.arrows[self.arrow_index[(dom, cod, images)]]

    def inclusion(self, sub: int, obj: int) -> Arrow:
        names = [n for n, _ in self.objects[obj]]
        images = tuple(names.index(n) for n, _ in self.objects[sub])
        return self.arrows[self.arrow_index[(sub, obj, images)]]

    def compose(self, g: int, f: int) -> int:
        """``g ∘ f`` (first ``f``)."""
        key = (g, f)
        out = self._compose.get(key)
        if out is None:
            af, ag = self.arrows[f], self.arrows[g]
            if af.cod != ag.dom:
                raise ValueError("arrows do not compose")
            images = tuple(ag.images[i] for i in af.images)
            out = self._compose[key] = self.arrow_index[(af.dom, ag.cod, images)]
        return out

    def composites(self):
        """Per arrow ``a``: the pairs ``(g, g∘a)`` and ``(f, a∘f)``."""
        if self._composites is None:
            post = [tuple((g, self.compose(g, a.id)) for g in self.out[a.cod]) for a in self.arrows]
            pre = [tuple((f, self.compose(a.id, f)) for f in self.into[a.dom]) for a in self.arrows]
            self._composites = (post, pre)
        return self._composites

    def render(self, arrow: int) -> str:
        a = self.arrows[arrow]
        dom, cod = self.objects[a.dom], self.objects[a.cod]
        pairs = ", ".join(f"{dom[i][0]}↦{cod[j][0]}" for i, j in enumerate(a.images))
        return f"[{pairs}] : {SymbolCtx(dom)} ↪ {SymbolCtx(cod)}"

    def parallel_groups(self, obj: int, subset: frozenset) -> list:
        """Arrows out of ``obj`` grouped by codomain and by their values on
        the positions in ``subset``; only groups with two or more members."""
        key = (obj, subset)
        groups = self._groups.get(key)
        if groups is None:
            buckets = {}
            for a in self.out[obj]:
                arr = self.arrows[a]
                buckets.setdefault((arr.cod, tuple(arr.images[i] for i in sorted(subset))), []).append(a)
            groups = self._groups[key] = [g for g in buckets.values() if len(g) > 1]
        return groups

    def cospans(self):
        """Every pullback square ``P → A → D ← B ← P`` (with ``D`` in the core
        when ``pullback_scope`` is ``"core"``) as tuples ``(f, g, p, pa, pb)``
        of arrow ids."""
        if self._cospans is None:
            out = []
            targets = self.core if self.pullback_scope == "core" else range(len(self.objects))
            for d in sorted(targets):
                into = self.into[d]
                for f in into:
                    for g in into:
                        out.append((f, g) + self._pullback(f, g))
            self._cospans = out
        return self._cospans

    def _pullback(self, f, g):
        af, ag = self.arrows[f], self.arrows[g]
        d = self.objects[af.cod]
        common = sorted(set(af.images) & set(ag.images))
        if self.skeletal:
            counts = {s: 0 for s in self.sorts}
            binding_of = {}
            for pos in sorted(common, key=lambda p: (self.sorts.index(d[p][1]), p)):
                s = d[pos][1]
                binding_of[pos] = (f"{s}{counts[s]}", s)
                counts[s] += 1
            p_obj = tuple(binding_of[pos] for pos in sorted(common, key=lambda p: (self.sorts.index(d[p][1]), p)))
        else:
            a = self.objects[af.dom]
            binding_of = {af.images[i]: a[i] for i in range(len(a)) if af.images[i] in common}
            p_obj = tuple(sorted(binding_of.values(), key=lambda b: self._name_order(b[0])))
        p = self.index[p_obj]
        pos_in_p = {b: k for k, b in enumerate(p_obj)}
        to_p = {pos: pos_in_p[binding_of[pos]] for pos in common}
        inv_f = {j: i for i, j in enumerate(af.images)}
        inv_g = {j: i for i, j in enumerate(ag.images)}
        pa = tuple(inv_f[d_pos] for d_pos in sorted(common, key=lambda q: to_p[q]))
        pb = tuple(inv_g[d_pos] for d_pos in sorted(common, key=lambda q: to_p[q]))
        return (p, self.arrow_index[(p, af.dom, pa)], self.arrow_index[(p, ag.dom, pb)])


# -- presheaves -------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class FinitePresheaf:
    """A functor from the site to finite sets. ``carrier[o]`` lists element
    labels; ``action[a][k]`` is the index in the codomain fiber of the image
    of element ``k`` under arrow ``a``."""

    site: TruncatedSite
    carrier: tuple
    action: tuple
    name: str = ""
    _lookup: dict = field(default=None, init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "_lookup", [{lab: k for k, lab in enumerate(c)} for c in self.carrier])

    @classmethod
    def build(cls, site, carrier_fn: Callable, action_fn: Callable, name="", validate=True):
        """``carrier_fn(ctx)`` lists the fiber over a :class:`SymbolCtx`;
        ``action_fn(mapping, element)`` transports an element along a renaming
        given as a name-to-name dict."""
        carrier = tuple(tuple(carrier_fn(site.context(o))) for o in range(len(site.objects)))
        action = []
        for arr in site.arrows:
            dom, cod = site.objects[arr.dom], site.objects[arr.cod]
            mapping = {dom[i][0]: cod[j][0] for i, j in enumerate(arr.images)}
            index = {lab: k for k, lab in enumerate(carrier[arr.cod])}
            action.append(tuple(index[action_fn(mapping, e)] for e in carrier[arr.dom]))
        x = cls(site, carrier, tuple(action), name)
        if validate:
            bad = x.functoriality_violation()
            if bad is not None:
                raise ValueError(f"not functorial: {bad}")
        return x

    def fiber(self, obj):
        return self.carrier[obj]

    def element_index(self, obj, label):
        try:
            return self._lookup[obj][label]
        except KeyError:
            raise ElementNotInFiber(f"{label!r} is not in the fiber over {self.site.context(obj)}") from None

    def act(self, arrow, label):
        arr = self.site.arrows[arrow]
        k = self.element_index(arr.dom, label)
        return self.carrier[arr.cod][self.action[arrow][k]]

    def functoriality_violation(self):
        site = self.site
        for o, ident in enumerate(site.identity):
            if self.action[ident] != tuple(range(len(self.carrier[o]))):
                return f"identity on {site.context(o)} acts non-trivially"
        for f in site.arrows:
            for g in site.out[f.cod]:
                h = site.compose(g, f.id)
                if tuple(self.action[g][k] for k in self.action[f.id]) != self.action[h]:
                    return f"composite {site.render(g)} ∘ {site.render(f.id)}"
        return None

    def __repr__(self):
        sizes = [len(c) for c in self.carrier]
        return f"FinitePresheaf({self.name or 'anonymous'}, fibers={sizes})"


def _arrow_id(site, rho):
    if isinstance(rho, Arrow):
        return rho.id
    if isinstance(rho, Renaming):
        return site.arrow_of(rho).id
    return int(rho)


def _supported(x: FinitePresheaf, obj, subset, k):
    act = x.action
    for group in x.site.parallel_groups(obj, subset):
        first = act[group[0]][k]
        for a in group[1:]:
            if act[a][k] != first:
                return False
    return True


def supports(x: FinitePresheaf, rho, m) -> bool:
    """Does the domain of ``rho`` support ``m ∈ X(cod rho)``: do all parallel
    arrows out of the codomain that agree after ``rho`` agree on ``m``?"""
    site = x.site
    arr = site.arrows[_arrow_id(site, rho)]
    k = x.element_index(arr.cod, m)
    return _supported(x, arr.cod, frozenset(arr.images), k)


def least_support(x: FinitePresheaf, obj, m, require_sheaf: bool = True) -> SymbolCtx:
    """The intersection of all subcontexts of ``obj`` whose inclusion supports ``m``."""
    site = x.site
    if not isinstance(obj, int):
        obj = site.object_of(obj)
    if require_sheaf:
        verdict = is_sheaf(x)
        if not verdict:
            raise NotASheaf(f"{x.name or 'presheaf'} is not a sheaf: {verdict.describe(site)}")
    k = x.element_index(obj, m)
    n = len(site.objects[obj])
    least = frozenset(range(n))
    for size in range(n + 1):
        for subset in itertools.combinations(range(n), size):
            s = frozenset(subset)
            if _supported(x, obj, s, k):
                least &= s
    if not _supported(x, obj, least, k):
        raise NotASheaf(f"the supports of {m!r} have an intersection that does not support it")
    ctx = site.objects[obj]
    return SymbolCtx(tuple(ctx[i] for i in sorted(least)))


@dataclass(frozen=True)
class Verdict:
    ok: bool
    arrow: Optional[int] = None
    element: object = None
    failure: str = ""
    square: Optional[tuple] = None

    def __bool__(self):
        return self.ok

    def describe(self, site) -> str:
        if self.ok:
            return "holds"
        if self.square is not None:
            f, g = self.square[:2]
            return f"{self.failure} at the cospan {site.render(f)} and {site.render(g)}"
        return f"{self.failure} of a strengthening of {self.element!r} along {site.render(self.arrow)}"


_YES = Verdict(True)


def is_sheaf(x: FinitePresheaf) -> Verdict:
    """Every element supported by an arrow's domain has exactly one preimage."""
    site = x.site
    act = x.action
    for d in sorted(site.core):
        for a in site.into[d]:
            arr = site.arrows[a]
            subset = frozenset(arr.images)
            for n in range(len(x.carrier[d])):
                if not _supported(x, d, subset, n):
                    continue
                hits = act[a].count(n)
                if hits != 1:
                    return Verdict(False, a, x.carrier[d][n],
                                   "existence" if hits == 0 else "uniqueness")
    return _YES


def preserves_pullbacks(x: FinitePresheaf) -> Verdict:
    """Every pullback square of the site goes to a pullback of sets."""
    site = x.site
    act = x.action
    for square in site.cospans():
        f, g, p, pa, pb = square
        af, ag = site.arrows[f], site.arrows[g]
        xf, xg = act[f], act[g]
        matching = {(i, j) for i in range(len(xf)) for j in range(len(xg)) if xf[i] == xg[j]}
        pairs = [(act[pa][k], act[pb][k]) for k in range(len(x.carrier[p]))]
        if len(set(pairs)) != len(pairs):
            return Verdict(False, failure="non-injective comparison", square=square)
        if set(pairs) != matching:
            return Verdict(False, failure="non-surjective comparison", square=square)
    return _YES


# -- standard presheaves ---------------------------------------------------------

def terminal(site) -> FinitePresheaf:
    return FinitePresheaf.build(site, lambda ctx: ["*"], lambda r, e: e, name="1")


def empty(site) -> FinitePresheaf:
    return FinitePresheaf.build(site, lambda ctx: [], lambda r, e: e, name="0")


def symbols(site, sort) -> FinitePresheaf:
    """The presheaf of symbols of ``sort``."""
    return FinitePresheaf.build(site, lambda ctx: [u for u, s in ctx.bindings if s == sort],
                                lambda r, u: r[u], name=f"S_{sort}")


def product(x: FinitePresheaf, y: FinitePresheaf) -> FinitePresheaf:
    site = x.site
    carrier = tuple(tuple(itertools.product(cx, cy)) for cx, cy in zip(x.carrier, y.carrier))
    action = []
    for a in range(len(site.arrows)):
        cod = site.arrows[a].cod
        ny = len(y.carrier[cod])
        ay, ax = y.action[a], x.action[a]
        action.append(tuple(ax[i] * ny + ay[j]
                            for i in range(len(x.carrier[site.arrows[a].dom]))
                            for j in range(len(y.carrier[site.arrows[a].dom]))))
    return FinitePresheaf(site, carrier, tuple(action), f"({x.name} ⊗ {y.name})")


def coproduct(x: FinitePresheaf, y: FinitePresheaf) -> FinitePresheaf:
    site = x.site
    carrier = tuple(tuple((0, e) for e in cx) + tuple((1, e) for e in cy)
                    for cx, cy in zip(x.carrier, y.carrier))
    action = []
    for a in range(len(site.arrows)):
        offset = len(x.carrier[site.arrows[a].cod])
        action.append(tuple(x.action[a]) + tuple(k + offset for k in y.action[a]))
    return FinitePresheaf(site, carrier, tuple(action), f"({x.name} ⊕ {y.name})")


def inhabited_only(site) -> FinitePresheaf:
    """Empty over the empty context, a point elsewhere: a separated presheaf
    that is not a sheaf."""
    return FinitePresheaf.build(site, lambda ctx: ["*"] if len(ctx) else [],
                                lambda r, e: e, name="point-off-empty")


def subsets_of_size(site, k) -> FinitePresheaf:
    """``k``-element subsets of the context, acted on by direct image."""
    return FinitePresheaf.build(
        site, lambda ctx: [frozenset(c) for c in itertools.combinations(ctx.names(), k)],
        lambda r, s: frozenset(r[u] for u in s), name=f"P_{k}")


def two_points(site) -> FinitePresheaf:
    """Two points everywhere, every arrow acting as the identity."""
    return FinitePresheaf.build(site, lambda ctx: [0, 1], lambda r, e: e, name="2")


def collapse(site) -> FinitePresheaf:
    """Two points everywhere; bijections act trivially and every other arrow
    sends both points to ``0``. Point ``1`` has empty support but no
    strengthening, so this is not a sheaf."""
    sizes = [len(o) for o in site.objects]
    action = tuple((0, 1) if sizes[a.dom] == sizes[a.cod] else (0, 0) for a in site.arrows)
    return FinitePresheaf(site, tuple((0, 1) for _ in site.objects), action, "collapse")


def standard_presheaves(site) -> list[FinitePresheaf]:
    """Sheaves built from symbols by ⊕ and ⊗, plus known non-sheaves."""
    out = [terminal(site), empty(site), two_points(site)]
    syms = [symbols(site, s) for s in site.sorts]
    out += syms
    for a, b in itertools.combinations_with_replacement(syms, 2):
        out.append(product(a, b))
        out.append(coproduct(a, b))
    out.append(product(coproduct(syms[0], out[0]), syms[-1]))
    out += [inhabited_only(site), subsets_of_size(site, 1), collapse(site)]
    return out


# -- enumeration ----------------------------------------------------------------

def generators(site: TruncatedSite) -> list[int]:
    """A generating set of non-identity arrows, chosen greedily from small
    codomains upward so that automorphisms and one-step inclusions win."""
    ident = set(site.identity)
    order = sorted((a for a in range(len(site.arrows)) if a not in ident),
                   key=lambda a: (len(site.objects[site.arrows[a].cod]),
                                  -len(site.objects[site.arrows[a].dom]), a))
    closure = set(ident)
    gens = []
    for a in order:
        if a in closure:
            continue
        gens.append(a)
        frontier = [a]
        closure.add(a)
        while frontier:
            new = []
            for x in frontier:
                ax = site.arrows[x]
                for y in list(closure):
                    ay = site.arrows[y]
                    for h in ((site.compose(y, x),) if ay.dom == ax.cod else ()) + \
                             ((site.compose(x, y),) if ay.cod == ax.dom else ()):
                        if h not in closure:
                            closure.add(h)
                            new.append(h)
            frontier = new
    return gens


class _Search:
    """Backtracking over the actions of generating arrows; every composite is
    forced by propagation, and every composable pair is checked."""

    def __init__(self, site: TruncatedSite, sizes, gens=None, break_symmetry=False):
        self.site = site
        self.sizes = sizes
        self.gens = gens if gens is not None else generators(site)
        self.n = len(site.arrows)
        self.post, self.pre = site.composites()
        # Lex-leader constraints for swapping the two points of a fiber: the
        # vector of generator values must not exceed its swapped image. The
        # least member of each isomorphism class satisfies all of them.
        self.swappable = [o for o, k in enumerate(sizes) if k == 2] if break_symmetry else []

    def swapped(self, o, a, value):
        arr = self.site.arrows[a]
        if arr.dom == o:
            value = (value[1], value[0])
        if arr.cod == o:
            value = tuple(1 - v for v in value)
        return value

    def candidates(self, a, rng=None):
        arr = self.site.arrows[a]
        choices = itertools.product(range(self.sizes[arr.cod]), repeat=self.sizes[arr.dom])
        if rng is None:
            return choices
        choices = list(choices)
        rng.shuffle(choices)
        return choices

    def assign(self, action, a, value, trail):
        """Set ``a`` and propagate; False on a functoriality clash."""
        post, pre = self.post, self.pre
        stack = [(a, value)]
        while stack:
            a, value = stack.pop()
            old = action[a]
            if old is not None:
                if old != value:
                    return False
                continue
            action[a] = value
            trail.append(a)
            for g, h in post[a]:
                vg = action[g]
                if vg is not None:
                    stack.append((h, tuple([vg[k] for k in value])))
            for f, h in pre[a]:
                vf = action[f]
                if vf is not None:
                    stack.append((h, tuple([value[k] for k in vf])))
        return True

    def solutions(self, rng=None, limit=None, budget=None):
        """Yield action tables; ``budget`` caps the number of branching
        steps, after which the search stops quietly."""
        site = self.site
        action = [None] * self.n
        base = []
        for o, i in enumerate(site.identity):
            if not self.assign(action, i, tuple(range(self.sizes[o])), base):
                return
        gens = self.gens
        count = 0
        steps = 0

        def lex_ok(a, undecided):
            """Update the undecided swap constraints with generator ``a``."""
            value = action[a]
            still = []
            for o in undecided:
                other = self.swapped(o, a, value)
                if value > other:
                    return None
                if value == other:
                    still.append(o)
            return still

        def go(pos, undecided):
            nonlocal count
            if pos == len(gens):
                count += 1
                yield tuple(action)
                return
            a = gens[pos]
            if action[a] is not None:
                still = lex_ok(a, undecided)
                if still is not None:
                    yield from go(pos + 1, still)
                return
            nonlocal steps
            for value in self.candidates(a, rng):
                steps += 1
                if budget is not None and steps > budget:
                    return
                trail = []
                if self.assign(action, a, value, trail):
                    still = lex_ok(a, undecided)
                    if still is not None:
                        yield from go(pos + 1, still)
                for b in trail:
                    action[b] = None
                if limit is not None and count >= limit:
                    return

        yield from go(0, self.swappable)


def _inhabitable(site, sizes):
    """No arrow may lead from a non-empty fiber to an empty one."""
    return not any(sizes[a.dom] and not sizes[a.cod] for a in site.arrows)


def _presheaf(site, sizes, action, name):
    carrier = tuple(tuple(range(n)) for n in sizes)
    return FinitePresheaf(site, carrier, action, name)


def enumerate_presheaves(site: TruncatedSite, max_fiber: int = 2, up_to_iso: bool = False):
    """Every functor with fibers of size at most ``max_fiber``.

    With ``up_to_iso`` (only for ``max_fiber`` ≤ 2) relabellings of the
    fibers are pruned: every isomorphism class still appears at least once,
    possibly more than once.
    """
    if up_to_iso and max_fiber > 2:
        raise ValueError("isomorphism pruning handles fibers of size at most 2")
    k = 0
    gens = generators(site)
    for sizes in itertools.product(range(max_fiber + 1), repeat=len(site.objects)):
        if not _inhabitable(site, sizes):
            continue
        for action in _Search(site, sizes, gens, up_to_iso).solutions():
            yield _presheaf(site, sizes, action, f"exhaustive#{k}")
            k += 1


def random_presheaves(site: TruncatedSite, count: int, max_fiber: int = 3, seed: int = 0,
                      budget: int = 2000):
    """``count`` seeded-random functors with fibers of size at most ``max_fiber``.

    Fiber sizes are drawn uniformly, then a randomized search looks for one
    functor with those sizes; after ``budget`` steps without success the
    sizes are redrawn.
    """
    rng = random.Random(seed)
    gens = generators(site)
    made = 0
    while made < count:
        sizes = tuple(rng.randint(0, max_fiber) for _ in site.objects)
        if not _inhabitable(site, sizes):
            continue
        for action in _Search(site, sizes, gens).solutions(rng=rng, limit=1, budget=budget):
            yield _presheaf(site, sizes, action, f"random#{made}")
            made += 1


# -- agreement report -------------------------------------------------------------

@dataclass
class AgreementRecord:
    name: str
    fibers: tuple
    is_sheaf: bool
    preserves_pullbacks: bool
    detail: str = ""

    @property
    def agrees(self):
        return self.is_sheaf == self.preserves_pullbacks

    def as_json(self):
        return {"name": self.name, "fibers": list(self.fibers), "is_sheaf": self.is_sheaf,
                "preserves_pullbacks": self.preserves_pullbacks, "agrees": self.agrees,
                "detail": self.detail}


@dataclass
class AgreementReport:
    site: str
    checked: int = 0
    sheaves: int = 0
    pullback_preserving: int = 0
    disagreements: list = field(default_factory=list)
    records: list = field(default_factory=list)

    def add(self, rec: AgreementRecord, keep=False):
        self.checked += 1
        self.sheaves += rec.is_sheaf
        self.pullback_preserving += rec.preserves_pullbacks
        if not rec.agrees:
            self.disagreements.append(rec)
        if keep:
            self.records.append(rec)

    def merge(self, other: "AgreementReport"):
        self.checked += other.checked
        self.sheaves += other.sheaves
        self.pullback_preserving += other.pullback_preserving
        self.disagreements += other.disagreements
        self.records += other.records

    @property
    def ok(self):
        return not self.disagreements

    def summary(self) -> str:
        lines = [f"site: {self.site}",
                 f"presheaves checked: {self.checked}",
                 f"sheaves: {self.sheaves}",
                 f"pullback-preserving: {self.pullback_preserving}",
                 f"disagreements: {len(self.disagreements)}"]
        for rec in self.disagreements[:5]:
            lines.append(f"  {rec.name} fibers={list(rec.fibers)} is_sheaf={rec.is_sheaf} "
                         f"preserves_pullbacks={rec.preserves_pullbacks}: {rec.detail}")
        return "\n".join(lines)


def judge(x: FinitePresheaf) -> AgreementRecord:
    s, p = is_sheaf(x), preserves_pullbacks(x)
    detail = ""
    if not s:
        detail = s.describe(x.site)
    elif not p:
        detail = p.describe(x.site)
    return AgreementRecord(x.name, tuple(len(c) for c in x.carrier), bool(s), bool(p), detail)


def sheaf_pullback_agreement(site: TruncatedSite, exhaustive_fiber: int = 2, random_count: int = 500,
                         random_fiber: int = 3, seed: int = 0, keep_records: bool = False,
                         presheaves=None, up_to_iso: bool = True) -> AgreementReport:
    """Compare the sheaf condition with pullback preservation on every
    presheaf of the budget: all functors with fibers ≤ ``exhaustive_fiber``
    (up to isomorphism by default; both verdicts are invariant under it) and
    ``random_count`` random ones with fibers ≤ ``random_fiber``.
    ``presheaves`` replaces the generated family when given."""
    report = AgreementReport(repr(site))
    if presheaves is None:
        family = []
        if exhaustive_fiber is not None and exhaustive_fiber >= 0:
            family.append(enumerate_presheaves(site, exhaustive_fiber,
                                               up_to_iso and exhaustive_fiber <= 2))
        if random_count:
            family.append(random_presheaves(site, random_count, random_fiber, seed))
        presheaves = itertools.chain(*family)
    for x in presheaves:
        report.add(judge(x), keep_records)
    return report
