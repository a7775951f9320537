import csv
import io
import json

import pytest

from dyn_census.cli import main


@pytest.fixture
def triangle_stream(tmp_path):
    path = tmp_path / "triangle.txt"
    path.write_text("# cyclic triangle\nae 1 2\nae 2 3\nae 3 1\nq\n")
    return path


def test_run_json(triangle_stream, capsys):
    assert main(["run", str(triangle_stream)]) == 0
    reports = [json.loads(line) for line in capsys.readouterr().out.splitlines()]
    assert len(reports) == 2
    assert reports[-1]["induced"][8] == 1
    assert reports[-1]["mode"] == "directed3"


def test_run_csv_undirected(triangle_stream, capsys):
    assert main(["run", str(triangle_stream), "--mode", "undirected4", "--format", "csv"]) == 0
    rows = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
    assert rows[-1]["m5"] == "0"
    assert rows[-1]["q0"] == "0"
    assert rows[-1]["m"] == "3"


def test_run_reads_stdin(monkeypatch, capsys):
    monkeypatch.setattr("sys.stdin", io.StringIO("av 1\nav 2\nae 1 2\n"))
    assert main(["run", "-"]) == 0
    (line,) = capsys.readouterr().out.splitlines()
    assert json.loads(line)["m"] == 1


@pytest.mark.parametrize("command", ["run", "verify"])
def test_stdin_stays_open(monkeypatch, command):
    stdin = io.StringIO("av 1\nav 2\nae 1 2\n")
    monkeypatch.setattr("sys.stdin", stdin)
    assert main([command, "-"]) == 0
    assert not stdin.closed


def test_run_error_exits_nonzero(tmp_path, capsys):
    path = tmp_path / "bad.txt"
    path.write_text("av 1\nre 1 2\n")
    assert main(["run", str(path)]) == 1
    err = capsys.readouterr().err
    assert err.startswith("dyn-census: line 2")


def test_parse_error_exits_nonzero(tmp_path, capsys):
    path = tmp_path / "bad.txt"
    path.write_text("av 1\nfrob 2\n")
    assert main(["run", str(path)]) == 1
    assert "line 2" in capsys.readouterr().err


def test_verify_pass(triangle_stream, capsys):
    assert main(["verify", str(triangle_stream), "--shuffle", "0.5", "--seed", "3"]) == 0
    assert json.loads(capsys.readouterr().out) == {"status": "pass"}


def test_verify_cap(triangle_stream, capsys):
    assert main(["verify", str(triangle_stream), "--oracle-cap", "2"]) == 1
    assert "oracle cap" in capsys.readouterr().err


def test_gen_is_deterministic(capsys):
    args = ["gen", "--n", "10", "--m", "20", "--seed", "1"]
    assert main(args) == 0
    first = capsys.readouterr().out
    assert main(args) == 0
    assert capsys.readouterr().out == first
    assert first.splitlines()[0] == "av 0"


def test_gen_bad_params(capsys):
    assert main(["gen", "--n", "3", "--m", "4", "--undirected"]) == 1
    assert capsys.readouterr().err.startswith("dyn-census:")


def test_bench_csv(capsys):
    assert main(["bench", "--n", "10", "--m", "20", "--sizes", "10,20"]) == 0
    rows = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
    assert [row["size"] for row in rows] == ["10", "20"]
    assert "mean_ns_per_op" in rows[0]


def test_bench_bad_sizes(capsys):
    assert main(["bench", "--sizes", "10,x"]) == 1
    assert "--sizes" in capsys.readouterr().err
