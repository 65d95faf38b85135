from __future__ import annotations

import io
import json
import subprocess
import sys

import pytest

from oddcycles.cli import main
from oddcycles.generate import PUBLISHED_COUNTS
from oddcycles.graph_core import named_graph, parse_graph6, to_graph6


def test_analyze_petersen_json(capsys):
    assert main(["analyze", "name:petersen", "--json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["spectrum"]["odd_lengths"] == [5, 9] and out["chi"] == 3


def test_analyze_text_and_graph6(capsys):
    assert main(["analyze", to_graph6(named_graph("wheel(6)")).decode()]) == 0
    out = capsys.readouterr().out
    assert "odd_lengths [3, 5]" in out and "wang_35 pass" in out


def test_analyze_stdin(capsys, monkeypatch):
    monkeypatch.setattr(sys, "stdin", io.TextIOWrapper(io.BytesIO(b"Dhc\n")))
    assert main(["analyze", "-", "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["n"] == 5


def test_analyze_budget_exit(capsys):
    assert main(["analyze", "name:petersen", "--budget", "1"]) == 3


def test_gen_book(capsys):
    assert main(["gen", "--name", "book(3)", "--graph6"]) == 0
    lines = capsys.readouterr().out.splitlines()
    g = parse_graph6(lines[0])
    assert len(lines) == 1 and (g.n, g.edge_count) == (5, 7)


def test_gen_many(capsys):
    assert main(["gen", "--name", "petersen", "--name", "groetzsch"]) == 0
    assert len(capsys.readouterr().out.splitlines()) == 2


def test_verify_gen7_exit_zero(capsys):
    assert main(["verify", "--corpus", "gen:7", "--jobs", "2"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["totals"]["graphs"] == sum(PUBLISHED_COUNTS[1:8])
    assert rep["totals"]["failures"] == 0 and "timing" not in rep


def test_verify_csv_to_file(tmp_path, capsys):
    out = tmp_path / "r.csv"
    assert main(["verify", "--corpus", "gen:4", "--format", "csv", "--out", str(out),
                 "--checks", "gyarfas_bound,wang_35"]) == 0
    assert capsys.readouterr().out == ""
    rows = out.read_text().splitlines()
    assert rows[0] == "check,pass,fail,skip_hypothesis,skip_budget"
    assert [r.split(",")[0] for r in rows[1:]] == ["gyarfas_bound", "wang_35"]


def test_verify_byte_identical_output(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    main(["verify", "--corpus", "rand:9,0.4,60,5", "--jobs", "1", "--out", str(a)])
    main(["verify", "--corpus", "rand:9,0.4,60,5", "--jobs", "3", "--out", str(b)])
    assert a.read_bytes() == b.read_bytes()


def test_verify_budget_exit(capsys):
    assert main(["verify", "--corpus", "gen:6,exact", "--budget", "1"]) == 3


@pytest.mark.parametrize("argv", [
    ["verify", "--corpus", "gen:4", "--checks", "nonsense"],
    ["verify", "--corpus", "gen:4", "--jobs", "0"],
    ["verify", "--corpus", "/no/such/file.g6"],
    ["analyze", "not-graph6!"],
    ["gen", "--name", "wheel(99)"],
])
def test_usage_and_io_errors(argv, capsys):
    assert main(argv) == 1
    captured = capsys.readouterr()
    assert captured.out == "" and "error" in captured.err


def test_argparse_errors_exit_one(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify"])
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        main(["mine", "--corpus", "gen:3", "--triangle-free", "--with-triangle"])
    assert exc.value.code == 1


def test_mine(tmp_path, capsys, caplog):
    corpus = tmp_path / "c.g6"
    corpus.write_bytes(to_graph6(named_graph("groetzsch")) + b"\n" + to_graph6(named_graph("chvatal")) + b"\n")
    assert main(["mine", "--corpus", str(corpus), "--triangle-free", "--odd-lengths", "4", "--chi", "4"]) == 0
    captured = capsys.readouterr()
    assert captured.out.splitlines() == [to_graph6(named_graph("groetzsch")).decode(),
                                         to_graph6(named_graph("chvatal")).decode()]
    assert "2 graph(s) match" in caplog.text


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "oddcycles", "gen", "--name", "cycle(5)"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout == "Dhc\n"
