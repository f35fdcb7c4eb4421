import csv
import io
import json
import subprocess
import sys

import pytest

from spp.cli import EXIT_CAPACITY, EXIT_INPUT, EXIT_INVARIANT, EXIT_OK, main
from spp.workspace import generate_random_workspace, load_workspace, save_workspace


@pytest.fixture
def ws_file(tmp_path):
    path = tmp_path / "ws.json"
    save_workspace(generate_random_workspace(6, 100, 2.0, 4), path)
    return path


def test_gen(tmp_path):
    out = tmp_path / "g.json"
    assert main(["gen", "--n", "7", "--curvature-max", "1.5", "--seed", "3", "--out", str(out)]) == EXIT_OK
    assert load_workspace(out) == generate_random_workspace(7, 100, 1.5, 3)


def test_solve_cspp(ws_file, capsys):
    assert main(["solve", "--input", str(ws_file)]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["order"][0] == {"subpath": 1, "orientation": "forward"}
    assert sorted(o["subpath"] for o in payload["order"]) == list(range(1, 7))
    assert set(payload["stage_weights"]) == {"mst", "e2", "matching", "trail"}


def test_solve_is_byte_stable(ws_file, capsys):
    main(["solve", "--input", str(ws_file)])
    first = capsys.readouterr().out
    main(["solve", "--input", str(ws_file)])
    assert capsys.readouterr().out == first


def test_solve_single_subpath(tmp_path, capsys):
    path = tmp_path / "one.json"
    path.write_text('{"subpaths": [{"start": [0, 0], "end": [3, 4], "length": 7}]}')
    assert main(["solve", "--input", str(path)]) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["length"] == 12.0


def test_solve_exact_two_straight(tmp_path, capsys):
    path = tmp_path / "two.json"
    path.write_text('{"subpaths": [{"start": [0, 0], "end": [1, 0]}, {"start": [2, 0], "end": [3, 0]}]}')
    assert main(["solve", "--input", str(path), "--method", "exact"]) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["length"] == 6.0


def test_solve_exact_and_cap(ws_file, tmp_path, capsys):
    assert main(["solve", "--input", str(ws_file), "--method", "exact"]) == EXIT_OK
    big = tmp_path / "big.json"
    save_workspace(generate_random_workspace(20, 100, 1, 0), big)
    assert main(["solve", "--input", str(big), "--method", "exact"]) == EXIT_CAPACITY


def test_solve_ga_writes_stats(ws_file, tmp_path, capsys):
    stats = tmp_path / "stats.csv"
    code = main(["solve", "--input", str(ws_file), "--method", "ga", "--seed", "2", "--stats-out", str(stats)])
    assert code == EXIT_OK
    assert stats.read_text().startswith("generation,best,mean\n")


def test_input_errors(tmp_path, capsys):
    assert main(["solve", "--input", str(tmp_path / "missing.json")]) == EXIT_INPUT
    bad = tmp_path / "bad.json"
    bad.write_text('{"subpaths": [{"start": [0, 0], "end": [1, 0], "length": 0.1}]}')
    assert main(["verify", "--input", str(bad)]) == EXIT_INPUT


def test_transform(ws_file, tmp_path, capsys):
    report = tmp_path / "report.json"
    assert main(["transform", "--input", str(ws_file), "--report", str(report)]) == EXIT_OK
    rows = list(csv.reader(io.StringIO(capsys.readouterr().out)))
    assert len(rows) == 19 and rows[0][1] == "s_1"
    assert [r["index"] for r in json.loads(report.read_text())] == list(range(1, 7))


def test_verify(ws_file, capsys):
    assert main(["verify", "--input", str(ws_file)]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines and all(line.startswith("PASS") for line in lines)


def test_verify_reports_failure(ws_file, monkeypatch, capsys):
    import spp.cli as cli
    from spp.verify import Check

    monkeypatch.setattr(cli, "run_checks", lambda ws, samples, seed: ([Check("x", False, "broken")], None))
    assert main(["verify", "--input", str(ws_file)]) == EXIT_INVARIANT
    assert "FAIL x: broken" in capsys.readouterr().out


def test_bench(ws_file, tmp_path, monkeypatch):
    monkeypatch.setenv("SPP_THREADS", "2")
    out = tmp_path / "bench.csv"
    assert main(["bench", "--envs", str(ws_file), "--reps", "3", "--ga-pop", "20", "--out", str(out)]) == EXIT_OK
    text = out.read_text()
    assert "\r" not in text
    rows = list(csv.DictReader(io.StringIO(text)))
    assert [r["method"] for r in rows] == ["cspp", "ga"]
    assert float(rows[0]["length_std"]) == 0.0
    assert rows[0]["length_improving"] != "" and rows[1]["length_improving"] == ""
    ga_len, cspp_len = float(rows[1]["length_mean"]), float(rows[0]["length_mean"])
    assert float(rows[0]["length_improving"]) == pytest.approx(100 * (ga_len - cspp_len) / ga_len, rel=1e-6)


def test_module_entry_point(ws_file):
    proc = subprocess.run(
        [sys.executable, "-m", "spp", "solve", "--input", str(ws_file)], capture_output=True, text=True
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["length"] > 0
