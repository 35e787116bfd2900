import json
import subprocess
import sys

import pytest

from subqubo import BinaryEncoding, LinearSystem, ProblemFile, save_problem
from subqubo.cli import main

from conftest import PAPER_A, PAPER_B


@pytest.fixture
def paper(tmp_path):
    path = tmp_path / "paper.json"
    save_problem(path, ProblemFile(LinearSystem(PAPER_A, PAPER_B), BinaryEncoding.integer(4), s=4))
    return str(path)


@pytest.fixture
def paper_translated(tmp_path):
    path = tmp_path / "paper_T.json"
    save_problem(
        path, ProblemFile(LinearSystem(PAPER_A, PAPER_B), BinaryEncoding.integer(4), T=[16, -32])
    )
    return str(path)


def _json(capsys):
    return json.loads(capsys.readouterr().out)


def test_sweep_hit(paper, capsys, tmp_path):
    report = tmp_path / "report.json"
    assert main(["sweep", paper, "--json", "--report", str(report)]) == 0
    out = _json(capsys)
    assert out["solutions"] == [{"index": 42, "x": [21, -17]}]
    assert json.loads(report.read_text()) == out


def test_sweep_no_hit(paper, capsys):
    assert main(["sweep", paper, "--subrange-bound", "1"]) == 1
    assert "no hit" in capsys.readouterr().out


def test_sweep_stop_on_hit_sa(paper, capsys):
    code = main(["sweep", paper, "--solver", "sa", "--reads", "200", "--seed", "3", "--stop-on-hit", "--json"])
    assert code == 0
    out = _json(capsys)
    assert out["hits"] == [42] and len(out["per_subrange"]) == 43


def test_build_and_solve_qubo(paper_translated, capsys, tmp_path):
    qfile = tmp_path / "q.json"
    assert main(["build", paper_translated, "-o", str(qfile), "--json"]) == 0
    out = _json(capsys)
    assert out["Q"][0][0] == -120 and out["target_energy"] == -1525 and out["c"] == [30, 25]
    assert main(["solve", "--qubo", str(qfile), "--json"]) == 0
    out = _json(capsys)
    assert out["best_energy"] == -1525 and out["minimizers"] == [[1, 0, 1, 0, 1, 1, 1, 1]]


def test_build_text_output_full_precision(paper, capsys):
    assert main(["build", paper]) == 0
    assert "target_energy: -5141.0" in capsys.readouterr().out


def test_solve_problem(paper_translated, paper, capsys):
    assert main(["solve", paper_translated, "--json"]) == 0
    out = _json(capsys)
    assert out["hit"] and out["x"] == [21, -17] and out["best_energy"] == -1525
    assert main(["solve", paper, "--translation", "16", "-32", "--solver", "sa", "--json"]) == 0
    assert _json(capsys)["x"] == [21, -17]
    assert main(["solve", paper, "--translation", "0", "0"]) == 1


def test_export(paper_translated, capsys):
    assert main(["export", paper_translated, "--reads", "1000"]) == 0
    out = capsys.readouterr().out
    assert "('q1','q1'): -120," in out and "num_reads=1000" in out


def test_verify(paper, capsys):
    assert main(["verify", paper, "--x", "21", "-17", "--json"]) == 0
    assert _json(capsys) == {"residual": 0.0}
    assert main(["verify", paper, "--x", "0", "0", "--json"]) == 1
    assert _json(capsys) == {"residual": 5141.0}


def test_gen_then_sweep(tmp_path, capsys):
    path = tmp_path / "g.json"
    args = ["gen", "-n", "3", "--x-range", "-8", "7", "--seed", "5", "--invertible", "-o", str(path), "--json"]
    assert main(args) == 0
    truth = _json(capsys)["ground_truth_x"]
    assert main(["sweep", str(path), "--json"]) == 0
    assert _json(capsys)["solutions"][0]["x"] == truth


def test_gen_default_bound(capsys):
    assert main(["gen", "-n", "2", "--seed", "1"]) == 0
    d = _json(capsys)
    # x in [-128, 126] with 4-wide subranges needs s = 32
    assert d["subrange"] == {"s": 32} and d["encoding"] == {"lo": 0, "hi": 1}


def test_usage_errors(tmp_path, paper, capsys):
    with pytest.raises(SystemExit) as exc:
        main(["sweep"])
    assert exc.value.code == 2
    assert main(["sweep", str(tmp_path / "missing.json")]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text('{"schema_version": 1, "n": 2}')
    assert main(["build", str(bad)]) == 2
    assert "A: missing" in capsys.readouterr().err
    assert main(["solve"]) == 2
    assert main(["sweep", paper, "--solver", "sa", "--sweeps", "0"]) == 2


def test_qubits_per_var_override(paper, capsys):
    assert main(["sweep", paper, "--qubits-per-var", "5", "--subrange-bound", "1", "--json"]) == 0
    out = _json(capsys)
    assert out["encoding"] == {"lo": 0, "hi": 4} and out["solutions"][0]["x"] == [21, -17]


def test_module_entry_point(paper):
    proc = subprocess.run(
        [sys.executable, "-m", "subqubo", "verify", paper, "--x", "21", "-17"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "residual: 0.0" in proc.stdout
