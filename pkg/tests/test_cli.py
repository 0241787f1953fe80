import json
import subprocess
import sys

import pytest

from llpon.cli import run


def call(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


def test_check_lemma_covvgood(capsys):
    code, report = call(capsys, "check-lemma", "covvgood", "--n", "2", "--samples", "1000", "--seed", "7")
    assert code == 0 and report["failures"] == []
    assert set(report) >= {"command", "params", "samples", "failures", "seed", "elapsed_ms"}
    assert report["samples"] == 1000 and report["seed"] == 7


def test_demo_llpo_prints_the_certificate(capsys):
    code = run(["demo", "llpo", "--n", "2", "--one-at", "5"])
    out = capsys.readouterr().out
    assert code == 0 and "Tr(nil,nil;one,zf:2)" in out


def test_encode_nil(capsys):
    code, report = call(capsys, "encode-tree", "--tree", "nil")
    assert code == 0 and report["shape"] == 0 and report["goodBound"] == 0


def test_encode_binary_leaf(capsys):
    _, report = call(capsys, "encode-tree", "--tree", "Tr(nil,nil;one,zf:2)")
    assert report["shape"] == 3 and report["goodBound"] == 2 and report["vgoodBound"] == 2
    assert report["clauses"][0]["g0"] == [0, 4, 8, 12]


def test_eval_llpo(capsys):
    code, report = call(
        capsys, "eval", "--n", "2", "--fuel", "50", "--def", "g=unit@5",
        "--formula", "(forall x. g(2*x)=0) \\/ (forall x. g(2*x+1)=0)",
    )
    assert code == 0
    assert report["status"] == "Proven" and report["certificate"]["tree"] == "Tr(nil,nil;one,zf:2)"
    assert report["witnesses"] == [0]


def test_eval_unknown_and_refuted(capsys):
    _, report = call(capsys, "eval", "--def", "g=unit@none", "--formula", "exists x. g(x)=1")
    assert report["status"] == "Unknown" and report["fuel_spent"] == 100
    _, report = call(capsys, "eval", "--formula", "forall x<4. x < 3")
    assert report["status"] == "Refuted" and "x=3" in report["counterexample"]


@pytest.mark.parametrize(
    "argv",
    [
        ["nonsense"],
        ["check-lemma", "nolemma"],
        ["eval", "--formula", "forall x g(x)=0"],
        ["eval", "--formula", "h(0)=0"],
        ["eval", "--def", "g=wave@1", "--formula", "g(0)=0"],
        ["encode-tree", "--tree", "Tr(nil;one)"],
        ["check-lemma", "covvgood", "--n", "1"],
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    assert run(argv) == 2


def test_reports_are_reproducible(capsys):
    argv = ["check-lemma", "soundness", "--samples", "60", "--seed", "11"]
    _, a = call(capsys, *argv)
    _, b = call(capsys, *argv)
    a.pop("elapsed_ms"), b.pop("elapsed_ms")
    assert json.dumps(a) == json.dumps(b)


def test_failures_set_exit_code_1(capsys, monkeypatch):
    from llpon import checks

    monkeypatch.setitem(checks.CHECKS, "k2", lambda rng, p: [{"sample": 0}])
    code, report = call(capsys, "check-lemma", "k2", "--samples", "1")
    assert code == 1 and report["failures"] == [{"sample": 0}]


def test_demo_traces(capsys):
    _, dov = call(capsys, "demo", "dovetail", "--inputs", "2")
    winners = {(row["case"], row["winner"]) for row in dov["trace"]}
    assert ("track all ones, second algorithm halts", 2) in winners
    assert ("zero at 3, second algorithm diverges", 1) in winners
    _, k2 = call(capsys, "demo", "k2", "--length", "3")
    outs = {row["apply"]: row["out"] for row in k2["trace"]}
    assert outs["par(beta) | const 1"] == outs["beta | const 1"]
    assert outs["par(beta) | zero at 2"] == [0, 0, 0]


def test_module_entry_point():
    done = subprocess.run(
        [sys.executable, "-m", "llpon", "demo", "llpo", "--n", "3", "--one-at", "0"],
        capture_output=True, text=True, check=True,
    )
    assert json.loads(done.stdout)["certificate"] == "Tr(nil,nil,nil;zf:0,one,one)"
