import csv
import json

import pytest

from gamedecomp.cli import main
from gamedecomp.formats import parse_game, write_game
from gamedecomp.game import BimatrixGame

from conftest import EX_PRODUCT, MP


@pytest.fixture
def write(tmp_path):
    def _write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return _write


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_verify_pennies(write, capsys):
    game = write("mp.txt", write_game(BimatrixGame.zero_sum(MP)))
    eq = write("eq.json", json.dumps({"x": ["1/2", "1/2"], "y": ["1/2", "1/2"],
                                      "p1_payoff": "0", "p2_payoff": "0"}))
    assert run(capsys, "verify", game, eq)[0] == 0
    bad = write("bad.json", json.dumps({"x": ["1", "0"], "y": ["1/2", "1/2"],
                                        "p1_payoff": "0", "p2_payoff": "0"}))
    assert run(capsys, "verify", game, bad)[0] == 3
    wrong = write("wrong.json", json.dumps({"x": ["1"], "y": ["1"],
                                            "p1_payoff": "0", "p2_payoff": "0"}))
    assert run(capsys, "verify", game, wrong)[0] == 3


def test_solve_then_verify(write, capsys, tmp_path):
    game = write("prod.txt", write_game(BimatrixGame.zero_sum(EX_PRODUCT)))
    report = str(tmp_path / "report.json")
    code, out, _ = run(capsys, "solve", game, "--no-eliminate", "--report", report)
    assert code == 0
    eq = write("eq.json", out)
    assert run(capsys, "verify", game, eq)[0] == 0
    rep = json.loads(open(report).read())
    assert rep["lambda"] == 16 and rep["S"] == 144
    assert rep["node_counts"] == {"sum": 0, "product": 1, "elim": 0, "leaf": 2}


def test_solve_output_deterministic(write, capsys):
    game = write("prod.txt", write_game(BimatrixGame.zero_sum(EX_PRODUCT)))
    outs = {run(capsys, "solve", game, "--threads", str(k))[1] for k in (1, 2)}
    assert len(outs) == 1


def test_solve_no_decompose(write, capsys):
    game = write("mp.txt", write_game(BimatrixGame.zero_sum(MP)))
    code, out, _ = run(capsys, "solve", game, "--no-decompose")
    assert code == 0 and json.loads(out)["x"] == ["1/2", "1/2"]


def test_decompose(write, capsys):
    game = write("prod.txt", write_game(BimatrixGame.zero_sum(EX_PRODUCT)))
    code, out, _ = run(capsys, "decompose", game, "--no-eliminate")
    doc = json.loads(out)
    assert code == 0 and doc["kind"] == "product"
    assert (doc["n1"], doc["m1"], doc["n2"], doc["m2"]) == (4, 4, 3, 3)


def test_generate(tmp_path, capsys):
    out, tree = tmp_path / "g.txt", tmp_path / "t.json"
    argv = ["generate", "--seed", "5", "--min-strategies", "15", "--max-strategies", "20",
            "-o", str(out), "--tree", str(tree)]
    assert run(capsys, *argv)[0] == 0
    g = parse_game(out.read_text())
    assert 15 <= g.n <= 20 and 15 <= g.m <= 20
    first = out.read_text()
    assert run(capsys, *argv)[0] == 0
    assert out.read_text() == first
    assert json.loads(tree.read_text())["kind"] in {"sum", "product", "elim", "leaf"}


def test_bench(tmp_path, capsys):
    out = tmp_path / "b.csv"
    code, _, _ = run(capsys, "bench", "--count", "3", "--seed", "1", "--min-strategies", "10",
                     "--max-strategies", "14", "--baseline", "--baseline-timeout", "2",
                     "-o", str(out))
    assert code == 0
    rows = list(csv.DictReader(out.open()))
    assert [int(r["seed"]) for r in rows] == [1, 2, 3]
    assert all(int(r["lambda"]) <= 6 and r["verified"] == "1" for r in rows)
    assert all(r["baseline_status"] in {"ok", "timeout"} for r in rows)
    summary = json.loads((tmp_path / "b.csv.summary.json").read_text())
    assert summary["games"] == 3 and "median_speedup" in summary


@pytest.mark.parametrize("argv", [[], ["solve"], ["frobnicate"], ["generate", "--seed", "-1", "-o", "x"],
                                  ["solve", "g.txt", "--threads", "two"]])
def test_usage_errors(argv, capsys):
    assert run(capsys, *argv)[0] == 1


def test_config_error_is_usage(tmp_path, capsys):
    code, _, err = run(capsys, "generate", "--seed", "1", "--min-strategies", "0",
                       "-o", str(tmp_path / "x"))
    assert code == 1 and "min_strategies" in err


def test_missing_file(capsys, tmp_path):
    assert run(capsys, "solve", str(tmp_path / "nope.txt"))[0] == 1


def test_parse_error_exit(write, capsys):
    game = write("bad.txt", "bimatrix 2 2\n1 2\n3\n")
    code, _, err = run(capsys, "solve", game)
    assert code == 2 and "line" in err
    good = write("mp.txt", write_game(BimatrixGame.zero_sum(MP)))
    eq = write("eq.json", "{not json")
    assert run(capsys, "verify", good, eq)[0] == 2


def test_internal_error_exit(write, capsys, monkeypatch):
    from gamedecomp import cli
    from gamedecomp.game import InvariantError

    def boom(*a, **k):
        raise InvariantError("broken")

    monkeypatch.setattr(cli, "solve", boom)
    game = write("mp.txt", write_game(BimatrixGame.zero_sum(MP)))
    assert run(capsys, "solve", game)[0] == 4
