import os

import pytest

from teamlogic.cli import main

MODEL = "domain 0 1\nrel P 1\n  1\n"
TEAM_OK = "vars x y\nrow 0 0\nrow 1 1\n"
TEAM_BAD = "vars x y\nrow 0 0\nrow 0 1\n"
PROOF_GOOD = "1. x = x ; EqRefl\n"
PROOF_BAD = "1. x = y ; EqRefl\n"


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return write


def test_check_satisfied_and_refuted(files, capsys):
    m = files("m.txt", MODEL)
    t = files("t.txt", TEAM_OK)
    assert main(["check", "--model", m, "--team", t, "--formula", "=(x ; y)"]) == 0
    assert "satisfied" in capsys.readouterr().out
    t2 = files("t2.txt", TEAM_BAD)
    assert main(["check", "--model", m, "--team", t2, "--formula", "=(x ; y)"]) == 1
    assert "not satisfied" in capsys.readouterr().out


def test_check_machine_records(files, capsys):
    m = files("m.txt", MODEL)
    t = files("t.txt", TEAM_OK)
    assert main(["--machine", "check", "--model", m, "--team", t,
                 "--formula", "=(x ; y)"]) == 0
    assert "result=sat" in capsys.readouterr().out


def test_entail_valid(capsys):
    rc = main(["entail", "--hyp", "=(x ; y)", "--hyp", "=(y ; z)",
               "--concl", "=(x ; z)"])
    assert rc == 0
    assert "valid up to domain size 2" in capsys.readouterr().out


def test_entail_counterexample_dumps_witness(capsys):
    rc = main(["entail", "--hyp", "=(x ; y)", "--concl", "=(y ; x)"])
    assert rc == 1
    out = capsys.readouterr().out
    assert "counterexample" in out
    assert "domain" in out and "row" in out


def test_negate(capsys):
    assert main(["negate", "--formula", "x = y"]) == 0
    assert capsys.readouterr().out.strip()
    assert main(["negate", "--formula", "=(x ; y) \\/ x = y"]) == 2


def test_translate_atom_prints_both_forms(capsys):
    assert main(["translate", "--formula", "=(x ; y)"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert len(out) == 2  # second-order sentence plus in-language definition
    assert main(["translate", "--formula", "E x. P(x)"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert len(out) == 1


def test_prove(files, capsys):
    good = files("good.prf", PROOF_GOOD)
    bad = files("bad.prf", PROOF_BAD)
    assert main(["prove", "--script", good]) == 0
    assert "ACCEPTED" in capsys.readouterr().out
    assert main(["prove", "--script", bad]) == 1
    assert "REJECTED at step 1" in capsys.readouterr().out


def test_props_single_suite_machine(capsys):
    rc = main(["--machine", "props", "--suite", "flatness", "--samples", "5"])
    assert rc == 0
    assert "suite=flatness status=pass" in capsys.readouterr().out


def test_usage_errors_exit_2(files, capsys):
    assert main(["prove", "--script", "/nonexistent.prf"]) == 2
    assert "error:" in capsys.readouterr().err
    m = files("m.txt", MODEL)
    t = files("t.txt", TEAM_OK)
    assert main(["check", "--model", m, "--team", t, "--formula", "(x ="]) == 2
    assert "error:" in capsys.readouterr().err


def test_console_script_is_installed():
    import shutil
    exe = shutil.which("teamlogic")
    assert exe is not None
