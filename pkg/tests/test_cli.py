import io
import json

import pytest

from orbigenus import fixture_path, load_model
from orbigenus.cli import main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_compute_text_lists_every_order():
    code, text = run("compute", "--model", fixture_path("cp1"), "--genus", "elliptic", "--sigma", "1/2", "--order", "3")
    assert code == 0
    lines = text.strip().splitlines()
    assert [ln.split(":")[0] for ln in lines[1:]] == ["q^0", "q^1", "q^2", "q^3"]
    assert all(ln.endswith(": 0") for ln in lines[1:])


def test_compute_json():
    code, text = run("compute", "--model", fixture_path("p113"), "--genus", "modified", "--level", "5", "--k", "2",
                     "--order", "1", "--out", "json")
    assert code == 0
    d = json.loads(text)
    assert d["kind"] == "modifiedOrbifold" and d["sigma"] == "2/5"


def test_compute_fractional_order():
    code, text = run("compute", "--model", fixture_path("p113"), "--genus", "orbifold", "--sigma", "1/5",
                     "--order", "2/3")
    assert code == 0
    assert "q^1/3:" in text and "q^2/3:" in text and "q^1:" not in text


def test_compute_ty_family():
    code, text = run("compute", "--model", fixture_path("cp2"), "--genus", "ty")
    assert code == 0 and "1 + zeta + zeta^(2)" in text
    code, text = run("compute", "--model", fixture_path("p113"), "--genus", "todd")
    assert code == 0 and text.strip() == "1"
    code, text = run("compute", "--model", fixture_path("p112"), "--genus", "hat-ty")
    assert code == 0 and "(2)*zeta" in text
    code, _ = run("compute", "--model", fixture_path("p113"), "--genus", "breve-ty", "--level", "5")
    assert code == 0


def test_k_out_of_range():
    code, _ = run("compute", "--model", fixture_path("cp2"), "--genus", "elliptic", "--sigma", "0/3")
    assert code == 2


def test_bad_arguments():
    assert run("compute", "--model", fixture_path("cp1"), "--genus", "bogus")[0] == 2
    assert run("compute", "--genus", "ty")[0] == 2
    assert run("compute", "--model", "/nonexistent.json", "--genus", "ty")[0] == 2


def test_bad_model_file(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"name": "x", "n": 1, "fixedPoints": [{"label": "a"}]}')
    assert run("compute", "--model", str(p), "--genus", "ty")[0] == 2


def test_evaluator_error_exit_code():
    # level 3 is not coprime to the Z/3 isotropy of P(1,1,3)
    code, _ = run("compute", "--model", fixture_path("p113"), "--genus", "modified", "--sigma", "1/3")
    assert code == 3


def test_check_suites():
    code, text = run("check", "--suite", "rigidity", "--model", fixture_path("p113"))
    assert code == 0
    assert json.loads(text)["passed"]
    code, text = run("check", "--suite", "modular", "--matrix", "S", "--samples", "4")
    assert code == 0
    assert all(json.loads(ln)["passed"] for ln in text.splitlines())
    code, text = run("check", "--suite", "all", "--model", fixture_path("p112"), "--samples", "2")
    names = [json.loads(ln)["checkName"] for ln in text.splitlines()]
    assert code == 0 and "divisibility" in names and "tylimits" in names


def test_check_corrupted_fails():
    code, text = run("check", "--suite", "rigidity", "--model", fixture_path("p113_corrupted"))
    assert code == 1
    d = json.loads(text)
    assert not d["passed"] and d["details"]["firstFailure"]["q"] == "0"


def test_generate(tmp_path):
    code, text = run("generate", "wps", "--a", "1,1,3", "--c", "0,1,5")
    assert code == 0
    assert load_model(text) == load_model(fixture_path("p113"))
    out = tmp_path / "m.json"
    assert run("generate", "wps", "--a", "1,1", "--c", "0,1", "--out", str(out))[0] == 0
    assert load_model(str(out)) == load_model(fixture_path("cp1"))
    assert run("generate", "wps", "--a", "1,1", "--c", "1,1")[0] == 2


def test_sectors():
    code, text = run("sectors", "--model", fixture_path("p113"))
    assert code == 0
    assert "h = 1: age = 2/3, breve = 4" in text
    code, text = run("sectors", "--model", fixture_path("p113"), "--out", "json")
    d = json.loads(text)
    assert d["points"][2]["commutingPairs"] == 9


@pytest.mark.parametrize("verb", ["compute", "check", "generate", "sectors"])
def test_help(verb, capsys):
    assert run(verb, "--help")[0] == 0
