"""Command line behaviour: reports, exit codes and byte-stable output."""

from __future__ import annotations

import json
import subprocess
import sys

import pytest

from twistnorm import fixtures
from twistnorm.cli import main
from twistnorm.laurent import LaurentPoly

from conftest import F13, K2_F13


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def poly(terms, field, nvars):
    return LaurentPoly.from_terms(field, nvars, terms)


def test_alex_trefoil(capsys):
    code, out, _ = run(capsys, "alex", "trefoil.pd", "--phi", "1", "--no-timings")
    assert code == 0
    rep = json.loads(out)
    res = rep["results"][0]["result"]
    assert res["delta1"]["text"] == "t^2 - t + 1"
    assert rep["results"][0]["bounds"][0]["bound"] == "1"


def test_alex_with_rep_file(capsys):
    path = str(fixtures.path("11_440_s3_f13.json"))
    code, out, _ = run(capsys, "alex", "11_440.pd", "--field", "13", "--rep", path, "--no-timings")
    assert code == 0
    d1 = json.loads(out)["results"][0]["result"]["delta1"]["terms"]
    assert poly(d1, F13, 1).unit_equal(LaurentPoly.parse(K2_F13, F13, ["t"]))


def test_alex_accepts_presentation_json(capsys):
    code, out, _ = run(capsys, "alex", "hopf.json", "--no-timings")
    assert code == 0
    assert json.loads(out)["results"][0]["result"]["delta1"]["text"] == "1"


def test_norm_writes_svg_and_report(capsys, tmp_path):
    path = str(fixtures.path("hopf_like_L_s3_f13.json"))
    code, out, _ = run(capsys, "norm", "hopf_like_L.pd", "--field", "13", "--rep", path, "--phi", "0,1",
                       "--phi", "1,0", "--compare", "--svg", "--out", str(tmp_path), "--no-timings")
    assert code == 0
    rep = json.loads(out)
    res = rep["results"][0]
    assert res["ball"]["compact"]
    assert sorted(map(tuple, map(lambda v: tuple(map(tuple, v)), res["ball"]["vertices"]))) == sorted(
        [((1, 2), (0, 1)), ((-1, 2), (0, 1)), ((0, 1), (1, 6)), ((0, 1), (-1, 6))])
    verdicts = {tuple(map(int, v["phi"])): v["verdict"] for v in res["fibering"]}
    assert verdicts == {(0, 1): "cannot fiber", (1, 0): "no obstruction"}
    assert (tmp_path / "ball.svg").read_text().startswith("<svg")
    assert json.loads((tmp_path / "norm.json").read_text()) == rep


def test_reps_command(capsys, tmp_path):
    code, out, _ = run(capsys, "reps", "11_440.pd", "--q", "3", "--field", "13", "--surjective",
                       "--out", str(tmp_path), "--no-timings")
    assert code == 0
    rep = json.loads(out)
    assert rep["count"] >= 1 and all(a["surjective"] for a in rep["assignments"])
    assert (tmp_path / "perm_0.json").exists() and (tmp_path / "rep_0.json").exists()


def test_cover_command_roundtrip(capsys, tmp_path):
    code, out, _ = run(capsys, "cover", "dunfield.pd", "--character", "1,0", "--mod", "2",
                       "--out", str(tmp_path), "--no-timings")
    assert code == 0
    cov = json.loads(out)["cover"]
    assert cov["index"] == 2 and cov["rationally_surjective"]
    # the written cover is itself a valid input
    code, out, _ = run(capsys, "alex", str(tmp_path / "cover.json"), "--no-timings")
    assert code == 0
    assert json.loads(out)["input"]["cover_index"] == 2


def test_trivial_cover_echoes_input(capsys):
    code, out, _ = run(capsys, "cover", "trefoil.pd", "--no-timings")
    cov = json.loads(out)["cover"]
    assert code == 0 and cov["index"] == 1
    assert cov["presentation"]["generators"] == ["a", "b", "c"]


def test_output_is_deterministic(capsys):
    a = run(capsys, "norm", "dunfield.pd", "--phi", "1,1", "--check", "--no-timings")[1]
    b = run(capsys, "norm", "dunfield.pd", "--phi", "1,1", "--check", "--no-timings")[1]
    assert a == b


@pytest.mark.parametrize("argv,code", [
    (["alex", "no_such_thing.pd"], 2),
    (["alex", "trefoil.pd", "--phi", "x"], 2),
    (["alex", "trefoil.pd", "--field", "12"], 3),
    (["alex", "trefoil.pd", "--phi", "1,2"], 3),
    (["alex", "trefoil.pd", "--rep", "search:3"], 3),
    (["cover", "trefoil.pd", "--character", "1", "--mod", "2", "--perms", "missing.json"], 2),
])
def test_exit_codes(capsys, argv, code):
    got, _, err = run(capsys, *argv)
    assert got == code
    assert json.loads(err)["error"] in ("parse", "validation")


def test_malformed_pd_file(capsys, tmp_path):
    bad = tmp_path / "bad.pd"
    bad.write_text("X[1,2,3]")
    code, _, err = run(capsys, "alex", str(bad))
    assert code == 2 and "arity" in json.loads(err)["message"]


def test_non_homomorphic_quotient(capsys, tmp_path):
    perms = tmp_path / "perms.json"
    perms.write_text(json.dumps({"q": 3, "images": {"a": "(1 2)", "b": "(1 2 3)", "c": "(1 2)"}}))
    code, _, err = run(capsys, "cover", "trefoil.pd", "--perms", str(perms))
    assert code == 3


def test_math_inconsistency_exit_code(capsys, monkeypatch):
    import twistnorm.alexander as alex
    monkeypatch.setattr(alex, "delta1_full",
                        lambda data, d0, cap=None: (LaurentPoly.parse("t + 5", d0.field, ["t"]), True))
    code, _, err = run(capsys, "alex", "trefoil.pd", "--verify")
    assert code == 4 and json.loads(err)["error"] == "math-inconsistency"


def test_console_entry_point():
    out = subprocess.run([sys.executable, "-m", "twistnorm", "alex", "unknot.pd", "--no-timings"],
                         capture_output=True, text=True, check=True)
    assert json.loads(out.stdout)["results"][0]["result"]["delta1"]["text"] == "1"
