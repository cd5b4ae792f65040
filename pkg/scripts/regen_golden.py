"""Rebuild tests/golden/cases.json from the case list below.

Run from the repository root after an intentional output change, then
review the diff before committing it.
"""
import io
import json
import sys
from pathlib import Path
from unittest import mock

from nomabt.cli import run

ROOT = Path(__file__).resolve().parent.parent
OUT = ROOT / "tests" / "golden" / "cases.json"
ASG = "data/assignables.sig"
LAM = "data/lambda.sig"
G = "tests/golden/"
SEQ = ["--sequents"]
EXAMPLE = "nabla[exp,exp]({u,v}.sequent(snoc[v](snoc[u](nil, P), pred(hyp[u])), pred(hyp[u])))"

CASES = [
    ("check-lam", ["check", "--sig", LAM, "--term", "lam([x].ap(x, x))"], ""),
    ("check-get", ["check", "--sig", ASG, "--syms", "u:exp", "--term", "get[u]"], ""),
    ("check-get-unbound", ["check", "--sig", ASG, "--term", "get[u]"], ""),
    ("check-meta", ["check", "--sig", ASG, "--meta", "m:{exp}[exp].exp", "--syms", "v:exp",
                    "--term", "decl(lam([x].x), {u}.m{u}(get[v]))"], ""),
    ("check-unbound-var", ["check", "--sig", ASG, "--term", "ap(lam([x].x), y)"], ""),
    ("check-stdin", ["check", "--sig", ASG], "fix([f].ap(f, lam([x].x)))\n"),
    ("check-parse-error", ["check", "--sig", ASG, "--term", "ap(x"], ""),
    ("check-arity", ["check", "--sig", ASG, "--vars", "x:exp", "--term", "ap(x)"], ""),
    ("check-bad-sig", ["check", "--sig", G + "bad.sig", "--term", "lam([x].x)"], ""),
    ("check-missing-sig", ["check", "--sig", G + "nope.sig", "--term", "x"], ""),
    ("fv", ["fv", "--sig", ASG, "--term", "ap(lam([x].ap(x, y)), z)"], ""),
    ("fv-stdin", ["fv", "--sig", ASG], "ap(x, y)\n"),
    ("fv-empty", ["fv", "--sig", ASG, "--term", "lam([x].x)"], ""),
    ("fs", ["fs", "--sig", ASG, "--term", "decl(get[w], {u}.set[u](get[v]))"], ""),
    ("fs-checked", ["fs", "--sig", ASG, "--syms", "v:exp", "--term", "set[w](get[v])"], ""),
    ("rename", ["rename", "--sig", ASG, "--map", "u=v", "--term", "ap(get[u], get[w])"], ""),
    ("rename-capture", ["rename", "--sig", ASG, "--map", "w=u",
                        "--term", "decl(y, {u}.set[u](get[w]))"], ""),
    ("rename-not-injective", ["rename", "--sig", ASG, "--map", "u=w,v=w",
                              "--term", "ap(get[u], get[v])"], ""),
    ("rename-bad-map", ["rename", "--sig", ASG, "--map", "u", "--term", "get[u]"], ""),
    ("subst", ["subst", "--sig", ASG, "--for", "x", "--with", "y",
               "--term", "lam([y].ap(y, x))"], ""),
    ("subst-symbols", ["subst", "--sig", ASG, "--for", "x", "--with", "get[u]",
                       "--term", "decl(y, {u}.set[u](x))"], ""),
    ("subst-checked", ["subst", "--sig", ASG, "--vars", "y:exp", "--for", "x", "--with", "y",
                       "--term", "ap(x, z)"], ""),
    ("msubst", ["msubst", "--sig", ASG, "--for", "m", "--with", "[x].ap(x, x)",
                "--term", "m(m(y))"], ""),
    ("msubst-symbols", ["msubst", "--sig", ASG, "--for", "m", "--with", "{u}[x].set[u](x)",
                        "--term", "m{v}(get[v])"], ""),
    ("msubst-valence", ["msubst", "--sig", ASG, "--meta", "m:[exp].exp", "--for", "m",
                        "--with", "{u}.get[u]", "--term", "m(lam([x].x))"], ""),
    ("interpret", ["interpret", "--sig", ASG, "--meta", "m:[exp].exp", "--syms", "u:exp",
                   "--vars", "y:exp", "--env", G + "env_simple.json",
                   "--term", "ap(m(y), get[u])"], ""),
    ("interpret-capture", ["interpret", "--sig", ASG, "--vars", "y:exp",
                           "--env", G + "env_capture.json", "--term", "lam([x].ap(x, y))"], ""),
    ("interpret-incomplete", ["interpret", "--sig", ASG, "--vars", "y:exp",
                              "--env", G + "env_missing.json", "--term", "y"], ""),
    ("wf-example", ["wf", *SEQ, "--sort", "jdg", "--term", EXAMPLE], ""),
    ("wf-example-sugar", ["wf", *SEQ, "--sort", "jdg", "--sugar", "--unicode", "--term", EXAMPLE], ""),
    ("wf-duplicate", ["wf", *SEQ, "--sort", "tele", "--syms", "u:exp",
                      "--term", "snoc[u](snoc[u](nil, P), P)"], ""),
    ("wf-self-reference", ["wf", *SEQ, "--sort", "jdg", "--term",
                           "nabla[exp]({u}.sequent(snoc[u](nil, pred(hyp[u])), P))"], ""),
    ("wf-unbound-hyp", ["wf", *SEQ, "--sort", "jdg", "--term",
                        "nabla[exp]({u}.sequent(snoc[u](nil, P), pred(hyp[w])))"], ""),
    ("sheaf-report-point", ["sheaf-report", "--sorts", "", "--max-size", "1"], ""),
    ("sheaf-report", ["sheaf-report", "--sorts", "a", "--max-size", "1"], ""),
    ("sheaf-report-random", ["sheaf-report", "--sorts", "a", "--max-size", "1", "--fiber", "-1",
                             "--random", "20", "--seed", "3"], ""),
    ("usage-unknown-command", ["bogus"], ""),
    ("usage-missing-flag", ["subst", "--term", "x"], ""),
]


def execute(args, stdin):
    out, err = io.StringIO(), io.StringIO()
    with mock.patch("sys.stdin", io.StringIO(stdin)):
        status = run(list(args), stdout=out, stderr=err)
    return {"stdout": out.getvalue(), "stderr": err.getvalue(), "exit": status}


def build():
    cases = []
    for name, args, stdin in CASES:
        for as_json in (False, True):
            argv = args + ["--json"] if as_json else args
            cases.append({"name": name + ("-json" if as_json else ""), "args": argv,
                          "stdin": stdin, **execute(argv, stdin)})
    return cases


def main():
    OUT.write_text(json.dumps(build(), indent=1, ensure_ascii=False) + "\n", encoding="utf-8")
    print(f"wrote {OUT.relative_to(ROOT)}")


if __name__ == "__main__":
    sys.exit(main())
