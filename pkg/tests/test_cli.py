import json

import pytest

from chl.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_compute_worked_example(capsys):
    code, out = run(capsys, "compute", "coupled-q", "--lambda", "2,1", "--mu", "1")
    assert code == 0
    assert "q[2,1|1]" in out


def test_compute_json_is_deterministic(capsys):
    args = ("compute", "coupled-q", "--lambda", "2,1", "--mu", "1", "--json")
    _, a = run(capsys, *args)
    _, b = run(capsys, *args)
    assert a == b
    doc = json.loads(a)
    assert doc["tool_version"]


def test_numeric_t(capsys):
    code, out = run(capsys, "compute", "coupled-q", "--lambda", "1", "--mu", "1", "--t-numeric", "0")
    assert code == 0


@pytest.mark.parametrize(
    "argv",
    [
        ("verify", "methods-agree", "--max-size", "3"),
        ("verify", "rll", "--nmax", "2"),
        ("verify", "conifold", "--order", "4"),
        ("verify", "fermion", "--relation", "derived", "--index-range", "1", "--degree-cap", "2"),
    ],
)
def test_verify_passes(capsys, argv):
    code, out = run(capsys, *argv, "--json")
    doc = json.loads(out)
    assert code == 0 and doc["status"] == "pass"
    keys = [c["key"] for c in doc["cases"]]
    assert keys == sorted(keys)


def test_verify_printed_relation_fails_with_witness(capsys):
    code, out = run(capsys, "verify", "fermion", "--relation", "both", "--index-range", "1", "--degree-cap", "1", "--json")
    doc = json.loads(out)
    assert code == 1
    assert any(c["status"] == "fail" and "witness" in c for c in doc["cases"])


def test_usage_errors(capsys):
    assert run(capsys, "compute", "coupled-q", "--lambda", "1,2")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
