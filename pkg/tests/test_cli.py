import re
import subprocess
import sys

import pytest

from artifact.cli import main
from artifact.kb import parse_program


def run(capsys, *argv):
    with pytest.raises(SystemExit) as ex:
        main([str(a) for a in argv])
    out = capsys.readouterr()
    return ex.value.code, out.out, out.err


@pytest.fixture
def fx(fixtures_dir):
    return lambda name: fixtures_dir / name


def test_check(capsys, fx):
    code, out, _ = run(capsys, "check", fx("p1.delp"))
    assert code == 0
    assert out.strip() == "ok: 2 facts, 1 strict rules, 9 defeasible rules"


def test_query(capsys, fx):
    assert run(capsys, "query", fx("p1.delp"), "y")[1] == "WARRANTED\n"
    assert run(capsys, "query", fx("p1.delp"), "~a")[1] == "NOT WARRANTED\n"
    assert run(capsys, "query", fx("p1.delp"), "q")[1] == "NO ARGUMENT\n"


def test_tree_dot(capsys, fx, tmp_path):
    prog = tmp_path / "p3.delp"
    prog.write_text(fx("p1.delp").read_text() + "a -< x.\n")
    code, out, _ = run(capsys, "tree", prog, "a", "--prefs", fx("p3.prefs"))
    assert code == 0
    assert "digraph tree_ce224be68f {" in out
    assert re.search(r"^// l\d DDU d-rep$", out, re.M)
    assert len(re.findall(r"attacking-set$", out, re.M)) >= 2
    target = tmp_path / "out.dot"
    run(capsys, "tree", prog, "a", "--prefs", fx("p3.prefs"), "-o", target)
    assert target.read_text() == out


def test_revise_and_verify(capsys, fx, tmp_path):
    code, out, _ = run(capsys, "revise", fx("p1.delp"), "--arg", fx("a_arg.delp"),
                       "--criterion", "rules-preserving", "--prefs", fx("p3.prefs"))
    assert code == 0
    assert out.splitlines()[0] == "% removed: ~a -< y."
    revised = parse_program(out)
    assert "~a -< y." not in {r.key for r in revised.delta}
    trace = tmp_path / "run.trace"
    run(capsys, "revise", fx("p1.delp"), "--arg", fx("a_arg.delp"), "--prefs", fx("p3.prefs"),
        "--trace", trace, "-o", tmp_path / "out.delp")
    assert trace.read_text().splitlines()[-1] == "result({y -< x, ~w -< t})"
    code, out, _ = run(capsys, "verify", fx("p1.delp"), "--arg", fx("a_arg.delp"), "--prefs", fx("p3.prefs"))
    assert code == 0
    assert out.splitlines()[:3] == ["inclusion: yes", "success: yes", "core-retainment: yes"]


def test_strict_mode_failure_exit_code(capsys, fx):
    code, _, err = run(capsys, "revise", fx("p1.delp"), "--arg", fx("a_arg.delp"), "--criterion", "rules",
                       "--strict-preservation", "--prefs", fx("p3.prefs"))
    assert code == 3 and "collateral" in err


@pytest.mark.parametrize("argv, code", [
    (["check"], 1),
    (["frobnicate"], 1),
    (["check", "missing.delp"], 1),
    (["revise", "P1", "--arg", "A", "--strict-preservation", "--profitability"], 1),
])
def test_usage_errors(capsys, fx, argv, code):
    argv = [str(fx("p1.delp")) if a == "P1" else str(fx("a_arg.delp")) if a == "A" else a for a in argv]
    assert run(capsys, *argv)[0] == code


def test_parse_and_semantic_errors(capsys, tmp_path, fx):
    bad = tmp_path / "bad.delp"
    bad.write_text("a -< b\n")
    code, _, err = run(capsys, "check", bad)
    assert code == 2 and "line 2, column 1" in err
    clash = tmp_path / "clash.delp"
    clash.write_text("a. ~a.\n")
    assert run(capsys, "check", clash)[0] == 3
    inner = tmp_path / "against_pi.delp"
    inner.write_text("claim: ~t.\n~t -< .\n")
    assert run(capsys, "revise", fx("p1.delp"), "--arg", inner)[0] == 3


def test_bench_table(capsys, tmp_path):
    corpus = tmp_path / "corpus.txt"
    corpus.write_text("1,6,0.5\n2,6,0.5\n")
    code, out, _ = run(capsys, "bench", "--corpus", corpus)
    assert code == 0
    lines = out.splitlines()
    assert lines[0].split() == ["criterion", "runs", "rules", "lines", "warrant-delta"]
    assert {l.split()[0] for l in lines[1:]} == {"initial", "rules", "semantics", "tree", "tree-rules"}


def test_console_script(fixtures_dir):
    out = subprocess.run([sys.executable, "-m", "artifact.cli", "check", str(fixtures_dir / "p1.delp")],
                         capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout.startswith("ok:")
