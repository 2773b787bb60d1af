import io
import json
import subprocess
import sys

import pytest

from admskein.catdata import dump_datum
from admskein.cli import main

from conftest import category


def run(*argv):
    out = io.StringIO()
    rc = main(list(argv), stream=out)
    return rc, out.getvalue()


def records(text):
    return [json.loads(line) for line in text.splitlines() if line.strip()]


def test_validate_builtin():
    rc, out = run("validate", "builtin:z3", "--format", "json")
    assert rc == 0 and records(out)[0]["ok"]


def test_pointed_skeins_from_cli():
    rc, out = run("skein", "builtin:z3", "--manifold", "annulus", "--subcat-s", "all", "--format", "json")
    assert rc == 0 and records(out)[0]["dim"] == 3
    rc, out = run("skein", "builtin:z3", "--manifold", "sphere", "--subcat-s", "all", "--format", "json")
    assert records(out)[0]["dim"] == 0
    rc, out = run("skein", "builtin:z3", "--manifold", "surface(1,0)", "--subcat-s", "all",
                  "--schedule", "b a b- a-", "--format", "json")
    assert records(out)[0]["dim"] == 9


def test_labelled_disc():
    rc, out = run("skein", "builtin:lambda2", "--manifold", "disc", "--subcat-s", "proj", "--labels", "L+",
                  "--format", "json")
    assert rc == 0 and records(out)[0]["dim"] == 1


def test_traces_and_certificate():
    rc, out = run("traces", "builtin:lambda2", "--subcat-s", "proj", "--certificate", "1,L", "--format", "json")
    assert rc == 0
    joined = {k: v for r in records(out) for k, v in r.items()}
    assert joined["passed"] is True and joined["rank"] == 2


def test_example_pipeline_agrees_on_two_primes():
    rc, out = run("twisted-traces", "--two-prime", "7,13", "--format", "json")
    assert rc == 0 and records(out)[-1]["agree"]


def test_coend_dump():
    rc, out = run("coend", "builtin:z3", "--dump")
    assert rc == 0 and "coend " in out and "\nend" in out


def test_closure():
    rc, out = run("closure", "builtin:z3", "--subcat-s", "X0", "--format", "json")
    assert rc == 0 and records(out)[0]["closure_dim"] == 3


def test_evaluate_word():
    rc, out = run("evaluate", "builtin:z3", "--word", "word;source;target;layer cap X1 coev;layer cup X1 ev_tilde;end",
                  "--format", "json")
    # the right loop on X1 is the cube root of unity 2 in F7
    assert rc == 0 and records(out)[0]["coords"] == "2 mod 7"
    rc, _ = run("evaluate", "builtin:z3", "--word", "word;source;target;layer cap X1 coev;layer cup X1 ev;end")
    assert rc == 2


def test_input_errors_exit_two(tmp_path):
    assert run("skein", "builtin:nope", "--manifold", "annulus")[0] == 2
    assert run("skein", "builtin:z3", "--manifold", "klein")[0] == 2
    assert run("skein", "builtin:lambda2", "--manifold", "interval(1,1)", "--subcat-s", "proj")[0] == 2
    assert run("frobnicate")[0] == 2
    text = dump_datum(category("z3"))
    bad = tmp_path / "cut.txt"
    bad.write_text("\n".join(text.splitlines()[:8]) + "\ncompose 0 0")
    assert run("validate", str(bad))[0] == 2


def test_math_failure_exits_one(tmp_path):
    text = dump_datum(category("z3")).splitlines()
    # scale one pivotal vector: the file still parses but the axioms break
    k = text.index("ev_tilde 1 = 2 mod 7")
    text[k] = "ev_tilde 1 = 3 mod 7"
    path = tmp_path / "bad.txt"
    path.write_text("\n".join(text) + "\n")
    rc, out = run("validate", str(path), "--format", "json")
    assert rc == 1 and records(out)[0]["ok"] is False


def test_out_file_and_determinism(tmp_path):
    log = tmp_path / "log.jsonl"
    args = ("skein", "builtin:lambda2", "--manifold", "surface(1,0)", "--subcat-s", "proj", "--out", str(log))
    first = run(*args)
    second = run(*args)
    assert first == second
    lines = log.read_text().splitlines()
    assert len(lines) == 2 and lines[0] == lines[1]


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "admskein.cli", "skein", "builtin:z2", "--manifold", "annulus",
                           "--subcat-s", "all", "--format", "json"], capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["dim"] == 2
