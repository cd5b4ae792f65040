import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "scripts"))
from regen_golden import CASES, execute  # noqa: E402

GOLDEN = json.loads((ROOT / "tests" / "golden" / "cases.json").read_text(encoding="utf-8"))


@pytest.fixture(autouse=True)
def _at_root(monkeypatch):
    monkeypatch.chdir(ROOT)


def test_every_subcommand_is_covered_in_both_modes():
    names = {c["args"][0] for c in GOLDEN if not c["name"].startswith("usage")}
    assert names == {"check", "fv", "fs", "rename", "subst", "msubst", "interpret", "wf",
                     "sheaf-report"}
    assert len(GOLDEN) == 2 * len(CASES)
    assert {c["exit"] for c in GOLDEN} == {0, 1, 2}


@pytest.mark.parametrize("case", GOLDEN, ids=[c["name"] for c in GOLDEN])
def test_golden(case):
    assert execute(case["args"], case["stdin"]) == {k: case[k] for k in ("stdout", "stderr", "exit")}


def test_json_mode_writes_nothing_to_stderr():
    for case in GOLDEN:
        if "--json" in case["args"]:
            assert case["stderr"] == ""
            obj = json.loads(case["stdout"])
            assert obj["ok"] == (case["exit"] == 0)


def test_installed_entry_point():
    case = next(c for c in GOLDEN if c["name"] == "rename-capture")
    env = dict(os.environ, PYTHONIOENCODING="utf-8")
    proc = subprocess.run([sys.executable, "-m", "nomabt.cli", *case["args"]], cwd=ROOT,
                          capture_output=True, text=True, env=env)
    assert (proc.stdout, proc.stderr, proc.returncode) == (case["stdout"], case["stderr"],
                                                           case["exit"])
