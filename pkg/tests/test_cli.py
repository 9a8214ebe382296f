"""Command-line interface: commands, formats, exit codes, determinism."""

import json

import pytest

from annkh.build import braid_closure
from annkh.cli import main
from annkh.diagram import AnnularDiagram, FreeLoop


@pytest.fixture()
def sigma1_file(tmp_path):
    path = tmp_path / "sigma1.json"
    path.write_text(braid_closure("sigma1", 2, [1], 1).to_json())
    return str(path)


@pytest.fixture()
def loop_file(tmp_path):
    path = tmp_path / "loop1.json"
    d = AnnularDiagram("loop1", [], [], [FreeLoop("u1", 1)])
    path.write_text(d.to_json())
    return str(path)


def run_json(args, capsys):
    code = main(args + ["--format", "structured"])
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_kh_loop(loop_file, capsys):
    code, rep = run_json(["kh", loop_file], capsys)
    assert code == 0
    assert rep["dims"] == [{"i": 0, "j": 1, "k": 1, "dim": 1},
                           {"i": 0, "j": -1, "k": -1, "dim": 1}]
    assert "q*t" in rep["polynomials"]["poincare"]


def test_kh_sigma1(sigma1_file, capsys):
    code, rep = run_json(["kh", sigma1_file], capsys)
    assert code == 0
    assert sum(r["dim"] for r in rep["dims"]) == 4


def test_kh_table_format(sigma1_file, capsys):
    assert main(["kh", sigma1_file]) == 0
    out = capsys.readouterr().out
    assert "diagram: sigma1" in out and "dim" in out


def test_malformed_file_exits_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["kh", str(bad)]) == 2
    assert "error" in capsys.readouterr().err


def test_missing_file_exits_2(capsys):
    assert main(["kh", "/nonexistent/d.json"]) == 2


def test_ss_pages(sigma1_file, capsys):
    code, rep = run_json(["ss", sigma1_file], capsys)
    assert code == 0
    totals = [p["total_dim"] for p in rep["pages"]]
    assert totals[0] == 4 and totals[1] == 2
    assert rep["checks"][0]["name"] == "abutment"
    assert rep["checks"][0]["pass"]


def test_sfh_loop(loop_file, capsys):
    code, rep = run_json(["sfh", loop_file, "--bits", ""], capsys)
    assert code == 0
    assert rep["parity"] == 1 and rep["rank"] == 2
    assert {(r["a"], r["m"]) for r in rep["dims"]} == {("0", "0"), ("-1", "-1")}
    assert rep["checks"][0]["pass"]


def test_sfh_half_integer_serialization(tmp_path, capsys):
    path = tmp_path / "loop0.json"
    path.write_text(AnnularDiagram("loop0", [], [],
                                   [FreeLoop("u1", 0)]).to_json())
    code, rep = run_json(["sfh", str(path), "--bits", ""], capsys)
    assert code == 0
    assert {r["m"] for r in rep["dims"]} == {"1/2", "-1/2"}


def test_sfh_wrong_bit_length(sigma1_file, capsys):
    assert main(["sfh", sigma1_file, "--bits", "01"]) == 2
    assert "resolution length" in capsys.readouterr().err


def test_cut_sigma1(sigma1_file, capsys):
    code, rep = run_json(["cut", sigma1_file], capsys)
    assert code == 0
    assert rep["verdict"] == "summand" and rep["n"] == 2
    assert rep["backtracking_resolutions"] == 1
    assert rep["comparison"] == [{"i": 0, "j": 1, "tangle": 1,
                                  "annular_top_block": 1}]


def test_cut_trivial(tmp_path, capsys):
    path = tmp_path / "doubled.json"
    path.write_text(AnnularDiagram("doubled", [], [],
                                   [FreeLoop("u1", 0, (1, -1))]).to_json())
    code, rep = run_json(["cut", str(path)], capsys)
    assert code == 0
    assert rep["verdict"] == "trivial"


def test_euler(sigma1_file, capsys):
    code, rep = run_json(["euler", sigma1_file], capsys)
    assert code == 0
    assert rep["checks"][0]["pass"]
    assert rep["polynomials"]["euler"]


def test_out_file_and_determinism(sigma1_file, tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["kh", sigma1_file, "--format", "structured",
                 "--out", str(a)]) == 0
    assert main(["kh", sigma1_file, "--format", "structured",
                 "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_threads_env(sigma1_file, capsys, monkeypatch):
    monkeypatch.setenv("ANNULARKH_THREADS", "2")
    code, rep = run_json(["kh", sigma1_file], capsys)
    assert code == 0 and sum(r["dim"] for r in rep["dims"]) == 4


def test_check_corpus(tmp_path, capsys):
    good = tmp_path / "good"
    good.mkdir()
    (good / "sigma1.json").write_text(
        braid_closure("sigma1", 2, [1], 1).to_json())
    assert main(["check", str(good)]) == 0
    out = capsys.readouterr().out
    assert "[PASS]" in out and "[FAIL]" not in out


def test_check_empty_dir_warns(tmp_path, capsys):
    empty = tmp_path / "empty"
    empty.mkdir()
    assert main(["check", str(empty)]) == 0
    assert "warning" in capsys.readouterr().out


def test_check_missing_dir_exits_2(capsys):
    assert main(["check", "/nonexistent/corpus"]) == 2


def test_check_missigned_fixture_fails(tmp_path, capsys):
    data = braid_closure("sigma1", 2, [1], 1).to_dict()
    e = data["edges"][0]
    e["from"], e["to"] = e["to"], e["from"]
    bad = tmp_path / "bad"
    bad.mkdir()
    (bad / "missigned.json").write_text(json.dumps(data))
    assert main(["check", str(bad)]) == 1
    out = capsys.readouterr().out
    assert "[FAIL]" in out and "orientation" in out
