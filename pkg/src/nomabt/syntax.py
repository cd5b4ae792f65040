"""Concrete syntax: signatures, contexts and terms, parsed and printed.

Term grammar::

    term  ::= x | m{u,..}(term,..) | op[u,..](abs,..) | nabla[σ,..](abs)
    abs   ::= \\{u,..}[x,..].term | {u,..}[x,..].term | [x,..].term | term

``ℵ`` is accepted for ``\\`` and ``∇`` for ``nabla``. Empty brackets may be
omitted. With the sequent signature the notations ``<>`` (``⋄``),
``H, u:A``, ``H >> A`` (``≫``) and ``'u`` are also accepted, and parentheses
group.

Signature files hold one declaration per line::

    sort exp
    op lam : ([exp].exp) exp
    op get {exp} : () exp      # comments run to end of line
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .contexts import MetaCtx, SymbolCtx, VarCtx
from .errors import (AbtError, DuplicateOperator, DuplicateSort, ParseError,
                     UnknownOperator, UnknownSort)
from .signature import Arity, OperatorDecl, Signature, Valence
from .term import Abstraction, MetaApp, OpApp, Term, Var


@dataclass(frozen=True)
class SourceSpan:
    """Byte offsets into the input; ``line``/``col`` are 1-based, for humans."""

    start: int
    end: int
    file: str = "<input>"
    line: int = 1
    col: int = 1

    def __str__(self):
        return f"{self.file}:{self.line}:{self.col}"


def _span(text, start, end, file):
    line = text.count("\n", 0, start) + 1
    col = start - (text.rfind("\n", 0, start) + 1) + 1
    return SourceSpan(len(text[:start].encode()), len(text[:end].encode()), file, line, col)


def _located(err, text, start, end, file):
    err.span = _span(text, start, end, file)
    return err


# -- lexing -------------------------------------------------------------------

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<comment>\#[^\n]*)
  | (?P<lam>[\\ℵ])
  | (?P<nabla>∇)
  | (?P<nil><>|⋄)
  | (?P<seq>>>|≫)
  | (?P<ident>(?:(?!ℵ)[^\W\d])(?:(?!ℵ)[\w′])*)
  | (?P<punct>[()\[\]{},.:'])
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    start: int
    end: int


def tokenize(text, file="<input>"):
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}",
                             _span(text, pos, pos + 1, file))
        kind = m.lastgroup
        if kind == "nabla":
            out.append(Token("ident", "nabla", m.start(), m.end()))
        elif kind == "punct":
            out.append(Token(m.group(), m.group(), m.start(), m.end()))
        elif kind not in ("ws", "comment"):
            out.append(Token(kind, m.group(), m.start(), m.end()))
        pos = m.end()
    out.append(Token("eof", "", len(text), len(text)))
    return out


class _Stream:
    def __init__(self, text, file):
        self.text = text
        self.file = file
        self.toks = tokenize(text, file)
        self.i = 0

    def peek(self, k=0):
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def at(self, kind, k=0):
        return self.peek(k).kind == kind

    def next(self):
        tok = self.toks[self.i]
        self.i = min(self.i + 1, len(self.toks) - 1)
        return tok

    def error(self, message, tok=None):
        tok = tok or self.peek()
        return ParseError(message, _span(self.text, tok.start, max(tok.end, tok.start + 1), self.file))

    def expect(self, kind, what=None):
        if not self.at(kind):
            tok = self.peek()
            found = "end of input" if tok.kind == "eof" else repr(tok.text)
            raise self.error(f"expected {what or repr(kind)}, found {found}")
        return self.next()

    def ident(self, what="an identifier"):
        return self.expect("ident", what).text

    def names(self, close, what="a name"):
        out = []
        if self.at(close):
            return out
        out.append(self.ident(what))
        while self.at(","):
            self.next()
            out.append(self.ident(what))
        return out

    def located(self, err, start_tok, end_tok=None):
        end_tok = end_tok or self.toks[max(self.i - 1, 0)]
        return _located(err, self.text, start_tok.start, max(end_tok.end, start_tok.end), self.file)


# -- terms --------------------------------------------------------------------

class _TermParser:
    def __init__(self, text, sig, metas, file):
        self.s = _Stream(text, file)
        self.sig = sig if sig is not None else Signature()
        self.metas = frozenset(metas)
        # id(node) -> (node, start, end); holding the node keeps its id unique
        self.spans = {}

    def _mark(self, node, start_tok):
        end = self.s.toks[max(self.s.i - 1, 0)].end
        self.spans.setdefault(id(node), (node, start_tok.start, max(end, start_tok.end)))
        return node

    def span_of(self, node):
        entry = self.spans.get(id(node))
        return None if entry is None else entry[1:]

    def notation(self, name, tok, bracket=()):
        if not self.sig.is_operator(name):
            raise self.s.error(f"this notation needs the operator {name!r}", tok)
        return self.sig.instance(name, bracket)

    def expr(self):
        s = self.s
        first = s.peek()
        t = self.primary()
        while s.at(",") and s.at("ident", 1) and s.at(":", 2):
            tok = s.next()
            u = s.next().text
            s.next()
            a = self.primary()
            t = self._mark(OpApp(self.notation("snoc", tok, (u,)), (t, a)), first)
        if s.at("seq"):
            tok = s.next()
            a = self.primary()
            t = self._mark(OpApp(self.notation("sequent", tok), (t, a)), first)
        return t

    def primary(self) -> Term:
        tok = self.s.peek()
        return self._mark(self._primary(), tok)

    def _primary(self) -> Term:
        s = self.s
        tok = s.peek()
        if tok.kind == "nil":
            s.next()
            return OpApp(self.notation("nil", tok))
        if tok.kind == "'":
            s.next()
            u = s.ident("a symbol after '")
            return OpApp(self.notation("hyp", tok, (u,)))
        if tok.kind == "(":
            s.next()
            t = self.expr()
            s.expect(")")
            return t
        if tok.kind == "ident":
            return self.head()
        found = "end of input" if tok.kind == "eof" else repr(tok.text)
        raise s.error(f"expected a term, found {found}")

    def head(self) -> Term:
        s = self.s
        tok = s.next()
        name = tok.text
        if s.at("{"):
            s.next()
            params = s.names("}", "a symbol")
            s.expect("}")
            return MetaApp(name, tuple(params), self.term_args())
        if self.sig.is_operator(name):
            bracket = ()
            if s.at("["):
                s.next()
                bracket = tuple(s.names("]"))
                s.expect("]")
            try:
                inst = self.sig.instance(name, bracket)
            except AbtError as e:
                raise s.located(e, tok)
            args = self.abs_args(inst)
            return OpApp(inst, args)
        if name in self.metas:
            return MetaApp(name, (), self.term_args())
        if s.at("(") or s.at("["):
            raise s.located(UnknownOperator(name), tok, tok)
        return Var(name)

    def term_args(self):
        s = self.s
        if not s.at("("):
            return ()
        s.next()
        args = []
        if not s.at(")"):
            args.append(self.expr())
            while s.at(","):
                s.next()
                args.append(self.expr())
        s.expect(")", "',' or ')'")
        return tuple(args)

    def abs_args(self, inst):
        s = self.s
        if not s.at("("):
            return ()
        s.next()
        args = []
        if not s.at(")"):
            args.append(self.abstraction())
            while s.at(","):
                s.next()
                args.append(self.abstraction())
        s.expect(")", "',' or ')'")
        valences = inst.decl.arity.valences
        if len(args) == len(valences):
            annotated = []
            for a, v in zip(args, valences):
                b = _annotate(a, v)
                if b is not a and id(a) in self.spans:
                    self.spans[id(b)] = (b,) + self.spans[id(a)][1:]
                annotated.append(b)
            args = annotated
        return tuple(args)

    def abstraction(self) -> Abstraction:
        tok = self.s.peek()
        return self._mark(self._abstraction(), tok)

    def _abstraction(self) -> Abstraction:
        s = self.s
        if s.at("lam") or s.at("{") or s.at("["):
            if s.at("lam"):
                s.next()
            syms, vars_ = [], []
            if s.at("{"):
                s.next()
                syms = s.names("}", "a symbol")
                s.expect("}")
            if s.at("["):
                s.next()
                vars_ = s.names("]", "a variable")
                s.expect("]")
            start = s.expect(".", "'.' after binders")
            try:
                return Abstraction(tuple(syms), tuple(vars_), self.expr())
            except AbtError as e:
                raise s.located(e, start)
        return Abstraction((), (), self.expr())


def _annotate(a, v):
    if len(a.symbols) == len(v.symbol_sorts) and len(a.variables) == len(v.variable_sorts):
        if all(s is None for _, s in a.symbols + a.variables):
            return a.annotated(v)
    return a


def parse_term(text: str, sig: Signature | None = None, metas=(), file="<input>") -> Term:
    """Parse a term; identifiers in ``metas`` (or a :class:`MetaCtx`) are
    metavariables even without ``{}``."""
    p = _TermParser(text, sig, metas, file)
    t = p.expr()
    p.s.expect("eof", "end of input")
    return t


def parse_abstraction(text: str, sig: Signature | None = None, metas=(), file="<input>") -> Abstraction:
    p = _TermParser(text, sig, metas, file)
    e = p.abstraction()
    p.s.expect("eof", "end of input")
    return e


# -- sorts, valences, contexts, signatures ------------------------------------

def _valence(s: _Stream) -> Valence:
    syms, vars_ = [], []
    if s.at("{"):
        s.next()
        syms = s.names("}", "a sort")
        s.expect("}")
    if s.at("["):
        s.next()
        vars_ = s.names("]", "a sort")
        s.expect("]")
    s.expect(".", "'.' before the target sort")
    return Valence(tuple(syms), tuple(vars_), s.ident("a sort"))


def _arity(s: _Stream) -> Arity:
    s.expect("(", "'(' opening the arity")
    vs = []
    if not s.at(")"):
        vs.append(_valence(s))
        while s.at(","):
            s.next()
            vs.append(_valence(s))
    s.expect(")", "',' or ')'")
    return Arity(tuple(vs), s.ident("the target sort"))


def parse_valence(text, file="<input>") -> Valence:
    s = _Stream(text, file)
    v = _valence(s)
    s.expect("eof", "end of input")
    return v


def parse_arity(text, file="<input>") -> Arity:
    s = _Stream(text, file)
    a = _arity(s)
    s.expect("eof", "end of input")
    return a


def _ctx(text, cls, value, file):
    s = _Stream(text, file)
    pairs = []
    if s.at("."):
        s.next()
    elif not s.at("eof"):
        while True:
            tok = s.peek()
            name = s.ident("a name")
            s.expect(":")
            v = value(s)
            if any(n == name for n, _ in pairs):
                raise s.located(cls._duplicate(name), tok)
            pairs.append((name, v))
            if not s.at(","):
                break
            s.next()
    s.expect("eof", "',' or end of input")
    return cls(tuple(pairs))


def parse_symbol_ctx(text, file="<syms>") -> SymbolCtx:
    """``u:exp, v:exp``; ``.`` or the empty string is the empty context."""
    return _ctx(text, SymbolCtx, lambda s: s.ident("a sort"), file)


def parse_var_ctx(text, file="<vars>") -> VarCtx:
    return _ctx(text, VarCtx, lambda s: s.ident("a sort"), file)


def parse_meta_ctx(text, file="<meta>") -> MetaCtx:
    """``m:{exp}[exp].exp, n:.exp``"""
    return _ctx(text, MetaCtx, _valence, file)


def parse_signature(text: str, file="<sig>", base: Signature | None = None) -> Signature:
    """Parse ``sort``/``op`` declarations and validate them, reporting the
    offending declaration's span on error. ``base`` is extended if given."""
    s = _Stream(text, file)
    sorts = list(base.sorts) if base is not None else []
    ops = []
    while not s.at("eof"):
        kw = s.peek()
        word = s.ident("'sort' or 'op'")
        if word == "sort":
            tok = s.peek()
            name = s.ident("a sort name")
            if name in sorts:
                raise s.located(DuplicateSort(name), tok)
            sorts.append(name)
            while s.at(","):
                s.next()
                tok = s.peek()
                name = s.ident("a sort name")
                if name in sorts:
                    raise s.located(DuplicateSort(name), tok)
                sorts.append(name)
        elif word == "op":
            name = s.ident("an operator name")
            params = []
            if s.at("{"):
                s.next()
                params = s.names("}", "a sort")
                s.expect("}")
            s.expect(":", "':' before the arity")
            arity = _arity(s)
            ops.append((OperatorDecl(name, tuple(params), arity), kw, s.toks[s.i - 1]))
        else:
            raise s.error(f"expected 'sort' or 'op', found {word!r}", kw)
    names = set(base._by_name) if base is not None else set()
    for decl, start, end in ops:
        if decl.name in names:
            raise s.located(DuplicateOperator(decl.name), start, end)
        names.add(decl.name)
        for sort in (*decl.param_sorts, *decl.arity.sorts()):
            if sort not in sorts:
                raise s.located(UnknownSort(sort), start, end)
    all_ops = (base.operators if base is not None else ()) + tuple(d for d, _, _ in ops)
    if base is not None:
        return base.extend(tuple(x for x in sorts if x not in base.sorts),
                           tuple(d for d, _, _ in ops))
    return Signature(tuple(sorts), all_ops)


# -- printing -----------------------------------------------------------------

def _is_decl(decl, name):
    from . import sequents
    ref = {"nil": sequents.NIL, "snoc": sequents.SNOC,
           "sequent": sequents.SEQUENT, "hyp": sequents.HYP}[name]
    return decl.name == ref.name and decl.arity == ref.arity and decl.param_sorts == ref.param_sorts


class _Printer:
    def __init__(self, unicode, sugar):
        self.unicode = unicode
        self.sugar = sugar

    def sugar_kind(self, t):
        if not (self.sugar and isinstance(t, OpApp)):
            return None
        if not all(a.is_bare for a in t.args):
            return None
        for kind in ("nil", "snoc", "sequent", "hyp"):
            if _is_decl(t.inst.decl, kind):
                return kind
        return None

    def term(self, t) -> str:
        """Print at expression level (an argument position)."""
        kind = self.sugar_kind(t)
        if kind == "sequent":
            h, a = (x.body for x in t.args)
            arrow = " ≫ " if self.unicode else " >> "
            return self.tele(h) + arrow + self.primary(a)
        if kind == "snoc":
            return self.tele(t)
        return self.primary(t)

    def tele(self, t) -> str:
        if self.sugar_kind(t) == "snoc":
            h, a = (x.body for x in t.args)
            return f"{self.tele(h)}, {t.inst.params[0]}:{self.primary(a)}"
        return self.primary(t)

    def primary(self, t) -> str:
        kind = self.sugar_kind(t)
        if kind in ("snoc", "sequent"):
            return f"({self.term(t)})"
        if kind == "nil":
            return "⋄" if self.unicode else "<>"
        if kind == "hyp":
            return f"'{t.inst.params[0]}"
        if isinstance(t, Var):
            return t.name
        if isinstance(t, MetaApp):
            out = t.meta
            if t.params:
                out += "{" + ",".join(t.params) + "}"
            if t.args:
                out += "(" + ", ".join(map(self.term, t.args)) + ")"
            return out
        if isinstance(t, OpApp):
            from .sequents import NablaDecl
            decl = t.inst.decl
            if isinstance(decl, NablaDecl):
                out = ("∇" if self.unicode else "nabla") + "[" + ",".join(decl.index) + "]"
            else:
                out = decl.name
                if t.inst.params:
                    out += "[" + ",".join(t.inst.params) + "]"
            if t.args:
                out += "(" + ", ".join(map(self.abstraction, t.args)) + ")"
            return out
        raise TypeError(f"not a term: {t!r}")

    def abstraction(self, e) -> str:
        if e.is_bare:
            return self.term(e.body)
        out = "ℵ" if self.unicode else "\\"
        if e.symbols:
            out += "{" + ",".join(e.symbol_names) + "}"
        if e.variables:
            out += "[" + ",".join(e.variable_names) + "]"
        return out + "." + self.term(e.body)


def print_term(t, unicode: bool = False, sugar: bool = False) -> str:
    if isinstance(t, Abstraction):
        return print_abstraction(t, unicode, sugar)
    return _Printer(unicode, sugar).term(t)


def print_abstraction(e, unicode: bool = False, sugar: bool = False) -> str:
    return _Printer(unicode, sugar).abstraction(e)


def print_signature(sig: Signature) -> str:
    return str(sig)
