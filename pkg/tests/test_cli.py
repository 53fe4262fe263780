import csv
import json
import subprocess
import sys

import pytest

from vecfw.cli import EXIT_INPUT, EXIT_MAX_ITER, EXIT_OK, main


def kv(out: str) -> dict:
    return dict(line.split("=", 1) for line in out.splitlines() if "=" in line and not line.startswith(" "))


def test_solve_default(capsys):
    assert main(["solve", "--seed", "7", "--verify"]) == EXIT_OK
    values = kv(capsys.readouterr().out)
    assert values["status"] == "stationary"
    assert abs(float(values["v"])) <= 1e-5
    assert values["trace_violations"] == "0"
    assert len(values["x"].split(",")) == 5


def test_solve_trace_deterministic(tmp_path):
    paths = [tmp_path / "a.csv", tmp_path / "b.csv"]
    for p in paths:
        assert main(["solve", "--algorithm", "adaptive", "--seed", "2", "--trace", str(p)]) == EXIT_OK
    assert paths[0].read_bytes() == paths[1].read_bytes()
    rows = list(csv.reader(paths[0].open()))
    assert rows[0][0] == "k" and rows[-1][rows[0].index("t")] == ""


def test_infeasible_x0(capsys):
    assert main(["solve", "--x0", "0.5,0.5,0.5,0,0"]) == EXIT_INPUT
    assert "x0 infeasible" in capsys.readouterr().out


@pytest.mark.parametrize("argv", [
    ["solve", "--x0", "0.5,0.5"],
    ["solve", "--x0", "a,b,c,d,e"],
    ["solve", "--problem", "no-such-file.json"],
    ["solve", "--beta", "2"],
    ["bench", "--problem", "no-such-file.json"],
])
def test_input_errors(argv):
    assert main(argv) == EXIT_INPUT


def test_max_iterations_exit():
    assert main(["solve", "--algorithm", "adaptive", "--max-iter", "2", "--x0", "0.2,0.2,0.2,0.2,0.2"]) == EXIT_MAX_ITER


def test_bench_outputs(tmp_path, capsys):
    assert main(["bench", "--starts", "3", "--out-dir", str(tmp_path), "--jobs", "2"]) == EXIT_OK
    values = kv(capsys.readouterr().out)
    assert values["runs"] == "6"
    assert len((tmp_path / "front.csv").read_text().splitlines()) == 7
    assert len((tmp_path / "stats.csv").read_text().splitlines()) == 3
    assert set(json.loads((tmp_path / "stats.json").read_text())) == {"armijo", "adaptive"}


def test_problem_file(tmp_path, capsys):
    path = tmp_path / "p.json"
    path.write_text(json.dumps({
        "cone": {"kind": "orthant", "m": 1},
        "objectives": [{"Q": [[1, 0, 0], [0, 1, 0], [0, 0, 1]], "c": [0, 0, 0]}],
        "region": {"kind": "simplex", "n": 3},
    }))
    assert main(["solve", "--problem", str(path), "--x0", "1,0,0"]) == EXIT_OK
    assert kv(capsys.readouterr().out)["status"] == "stationary"


def test_check_lp_suite(capsys):
    assert main(["check", "--suite", "lp"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "[PASS]" in out and "failed=0" in out


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "vecfw", "check", "--suite", "descent"],
                         capture_output=True, text=True, check=False)
    assert out.returncode == 0, out.stdout + out.stderr
    assert "failed=0" in out.stdout
