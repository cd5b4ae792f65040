"""Command-line interface.

Exit status: 0 on success, 1 when a checker rejects the input, 2 on usage or
parse errors. ``--json`` prints one object ``{ok, result, diagnostics}``.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Optional

from . import algebra, sequents, sheafcheck, syntax
from .contexts import MetaCtx, SymbolCtx, VarCtx
from .errors import AbtError
from .signature import Signature
from .term import Abstraction, check


@dataclass(frozen=True)
class Diagnostic:
    severity: str
    message: str
    span: Optional[syntax.SourceSpan] = None
    path: tuple = ()

    def as_json(self):
        span = None
        if self.span is not None:
            s = self.span
            span = {"file": s.file, "start": s.start, "end": s.end, "line": s.line, "col": s.col}
        return {"severity": self.severity, "message": self.message, "span": span,
                "path": list(self.path)}

    def __str__(self):
        where = f"{self.span}: " if self.span is not None else ""
        path = f" (at subterm {'.'.join(map(str, self.path))})" if self.path else ""
        return f"{self.severity}: {where}{self.message}{path}"


class Failure(Exception):
    """Stops a command with an exit status and diagnostics."""

    def __init__(self, status, diagnostics, result=None):
        super().__init__(diagnostics[0].message if diagnostics else "")
        self.status = status
        self.diagnostics = diagnostics
        self.result = result


class UsageError(Exception):
    pass


# -- source handling ----------------------------------------------------------

class Source:
    """A parsed term together with spans for each subterm path."""

    def __init__(self, text, file, sig, metas, abstraction=False):
        self.text = text
        self.file = file
        parser = syntax._TermParser(text, sig, metas, file)
        self.node = parser.abstraction() if abstraction else parser.expr()
        parser.s.expect("eof", "end of input")
        self.spans = {}
        self._index(self.node, (), parser)

    def _index(self, t, path, parser):
        span = parser.span_of(t)
        if span is not None and path not in self.spans:
            self.spans[path] = span
        if isinstance(t, Abstraction):
            self._index(t.body, path, parser)
            return
        for i, a in enumerate(getattr(t, "args", ())):
            self._index(a, path + (i,), parser)

    def span_for(self, path):
        path = tuple(path)
        while path not in self.spans and path:
            path = path[:-1]
        start, end = self.spans.get(path, (0, len(self.text)))
        return syntax._span(self.text, start, end, self.file)


def _parse_phase(fn, *args, **kw):
    try:
        return fn(*args, **kw)
    except AbtError as e:
        raise Failure(2, [Diagnostic("error", e.message, getattr(e, "span", None), e.path)])


def _checker_failure(e: AbtError, source: Optional[Source] = None):
    span = getattr(e, "span", None)
    if span is None and source is not None:
        span = source.span_for(e.path)
    return Failure(1, [Diagnostic("error", e.message, span, e.path)])


def _read(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise Failure(2, [Diagnostic("error", f"cannot read {path}: {e.strerror}")])


# -- commands -------------------------------------------------------------------

class Env:
    def __init__(self, args):
        self.args = args
        base = sequents.sequent_signature() if args.sequents else None
        if args.sig:
            self.sig = _parse_phase(syntax.parse_signature, _read(args.sig), args.sig, base)
        else:
            self.sig = base if base is not None else Signature()
        self.meta = _parse_phase(syntax.parse_meta_ctx, args.meta or "", "--meta")
        self.syms = _parse_phase(syntax.parse_symbol_ctx, args.syms or "", "--syms")
        self.vars = _parse_phase(syntax.parse_var_ctx, args.vars or "", "--vars")
        self.contexts_given = any(x is not None for x in (args.meta, args.syms, args.vars))

    def source(self, extra_metas=()):
        args = self.args
        if args.term is not None:
            text, file = args.term, "--term"
        else:
            text, file = sys.stdin.read().strip(), "<stdin>"
        return _parse_phase(Source, text, file, self.sig, set(self.meta) | set(extra_metas))

    def aux(self, text, flag, abstraction=False, extra_metas=()):
        return _parse_phase(Source, text, flag, self.sig, set(self.meta) | set(extra_metas),
                            abstraction)

    def sort_check(self, src: Source, meta=None, syms=None, vars_=None):
        try:
            return check(meta if meta is not None else self.meta,
                         syms if syms is not None else self.syms,
                         vars_ if vars_ is not None else self.vars, src.node, self.sig)
        except AbtError as e:
            raise _checker_failure(e, src)

    def show(self, t):
        return syntax.print_term(t, unicode=self.args.unicode, sugar=self.args.sugar)


def cmd_check(env: Env):
    src = env.source()
    sort = env.sort_check(src)
    return sort, sort


def _names(names):
    names = sorted(names)
    return " ".join(names), names


def cmd_fv(env: Env):
    src = env.source()
    if env.contexts_given:
        env.sort_check(src)
    return _names(algebra.free_vars(src.node))


def cmd_fs(env: Env):
    src = env.source()
    if env.contexts_given:
        env.sort_check(src)
    return _names(algebra.free_syms(src.node))


def _parse_map(text):
    pairs = []
    for item in filter(None, (p.strip() for p in (text or "").split(","))):
        if "=" not in item:
            raise Failure(2, [Diagnostic("error", f"--map entries look like u=v, not {item!r}")])
        u, v = (s.strip() for s in item.split("=", 1))
        if not u or not v:
            raise Failure(2, [Diagnostic("error", f"--map entries look like u=v, not {item!r}")])
        pairs.append((u, v))
    return pairs


def cmd_rename(env: Env):
    src = env.source()
    if env.contexts_given:
        env.sort_check(src)
    pairs = _parse_map(env.args.map)
    mapping = {u: u for u in algebra.free_syms(src.node)}
    mapping.update(pairs)
    seen = {}
    for u in sorted(algebra.free_syms(src.node)):
        v = mapping[u]
        if v in seen:
            from .errors import NotInjective
            raise _checker_failure(NotInjective(seen[v], u))
        seen[v] = u
    out = algebra.rename(src.node, mapping)
    text = env.show(out)
    return text, text


def cmd_subst(env: Env):
    src = env.source()
    repl = env.aux(env.args.with_, "--with")
    if env.contexts_given:
        x = env.args.for_
        inner = env.vars
        if x not in inner:
            sort = env.sort_check(repl)
            inner = inner.extend(x, sort)
        env.sort_check(src, vars_=inner)
        env.sort_check(repl)
    out = algebra.subst(repl.node, env.args.for_, src.node)
    text = env.show(out)
    return text, text


def cmd_msubst(env: Env):
    m = env.args.for_
    src = env.source(extra_metas=(m,))
    e = env.aux(env.args.with_, "--with", abstraction=True, extra_metas=(m,))
    expected = env.meta.get(m)
    if env.contexts_given:
        env.sort_check(src)
        try:
            from .term import check_abs
            check_abs(env.meta.remove(m) if m in env.meta else env.meta, env.syms, env.vars,
                      e.node, env.sig, expected)
        except AbtError as err:
            raise _checker_failure(err, e)
    try:
        out = algebra.msubst(e.node, m, src.node, expected)
    except AbtError as err:
        raise _checker_failure(err, src)
    text = env.show(out)
    return text, text


def _load_env(env: Env, path):
    try:
        data = json.loads(_read(path))
    except json.JSONDecodeError as e:
        raise Failure(2, [Diagnostic("error", f"{path}: invalid JSON: {e.msg}")])
    if not isinstance(data, dict):
        raise Failure(2, [Diagnostic("error", f"{path}: expected a JSON object")])
    meta_env = {m: env.aux(text, f"{path}:meta.{m}", abstraction=True).node
                for m, text in sorted(data.get("meta", {}).items())}
    sym_env = dict(data.get("syms", {}))
    var_env = {x: env.aux(text, f"{path}:vars.{x}").node
               for x, text in sorted(data.get("vars", {}).items())}
    return algebra.Environment(meta_env, sym_env, var_env)


def cmd_interpret(env: Env):
    src = env.source()
    if env.contexts_given:
        env.sort_check(src)
    e = _load_env(env, env.args.env)
    try:
        out = algebra.interpret(env.meta, env.syms, env.vars, src.node, e)
    except AbtError as err:
        raise _checker_failure(err, src)
    text = env.show(out)
    return text, text


def _subterm(t, path):
    for i in path:
        t = t.args[i]
        if isinstance(t, Abstraction):
            t = t.body
    return t


def cmd_wf(env: Env):
    from .errors import PresuppositionFailure
    src = env.source()
    sort = env.args.sort
    try:
        res = sequents.check_wf(env.syms, env.vars, src.node, sort, env.sig)
    except PresuppositionFailure as err:
        raise _checker_failure(err.cause if isinstance(err.cause, AbtError) else err, src)
    if res:
        return "wellformed", {"wellformed": True, "path": [], "reason": "", "trail": []}
    trail = [env.show(_subterm(src.node, res.path[:k])) for k in range(len(res.path) + 1)]
    lines = [f"not wellformed: {res.reason}"]
    lines += [f"  at {'.'.join(map(str, res.path[:k])) or 'root'}: {s}" for k, s in enumerate(trail)]
    result = {"wellformed": False, "path": list(res.path), "reason": res.reason, "trail": trail}
    raise Failure(1, [Diagnostic("error", f"not wellformed: {res.reason}",
                                 src.span_for(res.path), res.path)],
                  result=("\n".join(lines), result))


def cmd_sheaf_report(env: Env):
    a = env.args
    sorts = [s for s in a.sorts.split(",") if s]
    site = sheafcheck.TruncatedSite(sorts, a.max_size, margin=a.margin, skeletal=not a.named,
                                    pullback_scope=a.pullbacks)
    report = sheafcheck.sheaf_pullback_agreement(
        site, exhaustive_fiber=a.fiber if a.fiber >= 0 else None, random_count=a.random,
        random_fiber=a.random_fiber, seed=a.seed, keep_records=bool(a.jsonl))
    if a.jsonl:
        with open(a.jsonl, "w", encoding="utf-8") as fh:
            for rec in report.records:
                fh.write(json.dumps(rec.as_json(), sort_keys=True, ensure_ascii=False) + "\n")
    result = {"site": report.site, "checked": report.checked, "sheaves": report.sheaves,
              "pullback_preserving": report.pullback_preserving,
              "disagreements": [r.as_json() for r in report.disagreements]}
    if report.disagreements:
        n = len(report.disagreements)
        raise Failure(1, [Diagnostic("error", f"{n} presheaves where the two criteria disagree")],
                      result=(report.summary(), result))
    return report.summary(), result


COMMANDS = {
    "check": (cmd_check, "infer the sort of a term"),
    "fv": (cmd_fv, "free variables, sorted"),
    "fs": (cmd_fs, "free symbols, sorted"),
    "rename": (cmd_rename, "rename free symbols (--map u=v,...)"),
    "subst": (cmd_subst, "substitute a term for a variable"),
    "msubst": (cmd_msubst, "substitute an abstraction for a metavariable"),
    "interpret": (cmd_interpret, "interpret a term in an environment (--env file.json)"),
    "wf": (cmd_wf, "wellformedness of telescopes and sequents"),
    "sheaf-report": (cmd_sheaf_report, "compare the sheaf condition with pullback preservation"),
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def build_parser():
    p = _Parser(prog="nomabt", description="Abstract binding trees with symbols.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, (_, help_) in COMMANDS.items():
        sp = sub.add_parser(name, help=help_, description=help_)
        sp.add_argument("--json", action="store_true", help="print one JSON object")
        sp.add_argument("--unicode", action="store_true", help="print ℵ, ∇, ⋄ and ≫")
        sp.add_argument("--sugar", action="store_true", help="print sequent notation")
        if name == "sheaf-report":
            sp.add_argument("--sorts", default="exp", help="comma-separated sorts")
            sp.add_argument("--max-size", type=int, default=2)
            sp.add_argument("--margin", type=int, default=1)
            sp.add_argument("--fiber", type=int, default=2,
                            help="exhaustive fiber bound; negative to skip")
            sp.add_argument("--random", type=int, default=0, help="number of random presheaves")
            sp.add_argument("--random-fiber", type=int, default=3)
            sp.add_argument("--seed", type=int, default=0)
            sp.add_argument("--named", action="store_true",
                            help="use named contexts instead of the skeleton")
            sp.add_argument("--pullbacks", choices=("all", "core"), default="all")
            sp.add_argument("--jsonl", help="write one verdict record per presheaf here")
            sp.set_defaults(sig=None, sequents=False, meta=None, syms=None, vars=None, term=None)
            continue
        sp.add_argument("--sig", help="signature file")
        sp.add_argument("--sequents", action="store_true",
                        help="start from the built-in telescope/sequent signature")
        sp.add_argument("--meta", help="metavariable context, e.g. 'm:{exp}[exp].exp'")
        sp.add_argument("--syms", help="symbol context, e.g. 'u:exp, v:exp'")
        sp.add_argument("--vars", help="variable context, e.g. 'x:exp'")
        sp.add_argument("--term", help="the term (default: standard input)")
        if name == "rename":
            sp.add_argument("--map", required=True, help="u=v,... (other symbols fixed)")
        if name in ("subst", "msubst"):
            sp.add_argument("--for", dest="for_", required=True)
            sp.add_argument("--with", dest="with_", required=True)
        if name == "interpret":
            sp.add_argument("--env", required=True, help="JSON file with meta/syms/vars")
        if name == "wf":
            sp.add_argument("--sort", required=True)
    return p


def run(argv, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    want_json = "--json" in argv
    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        return _emit(stdout, stderr, want_json, 2, None, [Diagnostic("error", str(e))])
    fn = COMMANDS[args.command][0]
    try:
        text, result = fn(Env(args))
    except Failure as f:
        text, result = f.result if f.result is not None else (None, None)
        return _emit(stdout, stderr, args.json, f.status, result, f.diagnostics, text)
    return _emit(stdout, stderr, args.json, 0, result, [], text)


def _emit(stdout, stderr, as_json, status, result, diagnostics, text=None):
    if as_json:
        obj = {"ok": status == 0, "result": result,
               "diagnostics": [d.as_json() for d in diagnostics]}
        stdout.write(json.dumps(obj, sort_keys=True, ensure_ascii=False) + "\n")
    else:
        if text is not None:
            stdout.write(f"{text}\n")
        for d in diagnostics:
            stderr.write(f"{d}\n")
    return status


def main(argv=None):
    sys.exit(run(sys.argv[1:] if argv is None else argv))


if __name__ == "__main__":
    main()
