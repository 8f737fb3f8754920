import csv
import io
import json
import math

import numpy as np
import pytest

from geoment import bench
from geoment.cli import main
from geoment.errors import DimensionMismatch, InvalidParams
from geoment.io import digest, dump_state, load_state, state_from_dict, state_to_dict
from geoment.states import dicke_state, hs_state


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj) if not isinstance(obj, str) else obj)
    return str(p)


BELL = {"dims": [2, 2], "amplitudes": [{"idx": [0, 0], "re": 1.0, "im": 0.0},
                                       {"idx": [1, 1], "re": 1.0, "im": 0.0}]}


def test_state_file_round_trip(tmp_path):
    T = hs_state(1.1)
    p = tmp_path / "hs.json"
    dump_state(T, p)
    U = load_state(p, normalize_state=False)
    assert np.array_equal(T.array, U.array)
    assert digest(T) == digest(U)


def test_loader_fills_zeros_and_normalizes():
    T = state_from_dict(BELL)
    assert np.allclose(T.array, np.eye(2) / math.sqrt(2))
    raw = state_from_dict(BELL, normalize_state=False)
    assert raw.array[0, 0] == 1


def test_loader_rejects_malformed():
    with pytest.raises(InvalidParams):
        state_from_dict({"dims": [2]})
    with pytest.raises(DimensionMismatch):
        state_from_dict({"dims": [2, 2], "amplitudes": [{"idx": [2, 0], "re": 1}]})
    with pytest.raises(DimensionMismatch):
        state_from_dict({"dims": [2, 2], "amplitudes": [{"idx": [0], "re": 1}]})
    with pytest.raises(InvalidParams):
        state_from_dict({"dims": [2, 2], "amplitudes": [{"re": 1}]})


def test_state_to_dict_lists_nonzero_only():
    d = state_to_dict(dicke_state(3, 2))
    assert d["dims"] == [2, 2, 2]
    assert len(d["amplitudes"]) == 3
    assert {tuple(a["idx"]) for a in d["amplitudes"]} == {(0, 0, 1), (0, 1, 0), (1, 0, 0)}


def test_cli_gme_family(capsys):
    assert main(["gme", "--family", "dicke", "--param", "n=4", "--param", "k=2"]) == 0
    out = capsys.readouterr().out
    assert "lambda = 0.612372" in out
    assert "E      = 0.625000" in out
    assert out.count("factor[") == 4


def test_cli_gme_file(tmp_path, capsys):
    path = write(tmp_path, "bell.json", BELL)
    assert main(["gme", "--file", path, "--output", "csv"]) == 0
    rows = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
    assert rows == [{"dims": "2x2", "lambda": "0.707107", "E": "0.500000"}]


def test_cli_exit_codes(tmp_path, capsys):
    zero = write(tmp_path, "zero.json", {"dims": [2, 2], "amplitudes": []})
    assert main(["gme", "--file", zero]) == 3
    bad = write(tmp_path, "bad.json", "{not json")
    assert main(["gme", "--file", bad]) == 2
    assert main(["gme", "--file", str(tmp_path / "missing.json")]) == 2
    assert main(["gme", "--family", "dicke", "--param", "n=3", "--param", "k=7"]) == 2
    assert main(["gme", "--family", "dicke", "--param", "bogus"]) == 2
    unnorm = write(tmp_path, "un.json", BELL)
    assert main(["gme", "--file", unnorm, "--no-normalize"]) == 2
    with pytest.raises(SystemExit) as exc:
        main(["gme"])
    assert exc.value.code == 2


def test_cli_json_report_is_reproducible(tmp_path, capsys):
    report_path = tmp_path / "r.json"
    args = ["gme", "--family", "hs", "--param", "t=2.0", "--seed", "5", "--restarts", "6",
            "--report", str(report_path)]
    assert main(args) == 0
    capsys.readouterr()
    rep = json.loads(report_path.read_text())
    assert rep["command"] == args
    assert rep["config"]["optimizer"]["seed"] == 5
    assert len(rep["diagnostics"]["restart_overlaps"]) == 6
    assert main(rep["command"][:-2] + ["--output", "json"]) == 0
    again = json.loads(capsys.readouterr().out)
    assert again["results"] == rep["results"]
    assert again["input_digest"] == rep["input_digest"]


def test_cli_hierarchy_by_signature(capsys):
    assert main(["hierarchy", "--family", "w5", "--by-signature"]) == 0
    rows = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
    assert [r["partition"] for r in rows] == ["1,4", "2,3", "1,1,3", "1,2,2", "1,1,1,2",
                                              "1,1,1,1,1"]
    assert rows[0]["dims"] == "2x16" and rows[0]["E"] == "0.200000"


def test_cli_hierarchy_per_partition(tmp_path, capsys):
    path = write(tmp_path, "w.json", {"dims": [2, 2, 2], "amplitudes": [
        {"idx": [0, 0, 1], "re": 1}, {"idx": [0, 1, 0], "re": 1}, {"idx": [1, 0, 0], "re": 1}]})
    assert main(["hierarchy", "--file", path]) == 0
    rows = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
    assert [r["partition"] for r in rows] == ["0|1,2", "0,1|2", "0,2|1", "0|1|2"]
    assert rows[-1]["lambda"] == "0.666667"


def test_cli_sweep(capsys):
    assert main(["sweep", "--family", "hs", "--param-grid", "t=0:6.2832:5", "--restarts", "8"]) == 0
    rows = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
    assert len(rows) == 5
    assert list(rows[0]) == ["t", "lambda", "E"]
    assert rows[0]["E"] == "0.625000"


def test_cli_search_jsonl(capsys):
    assert main(["search", "--qubits", "2", "--ones", "2", "--samples", "40", "--seed", "7",
                 "--keep-top", "3"]) == 0
    lines = [json.loads(l) for l in capsys.readouterr().out.splitlines()]
    assert len(lines) == 3
    assert set(lines[0]) == {"support", "lambda", "E"}
    assert lines[0]["E"] == pytest.approx(0.5, abs=1e-10)


def test_cli_search_exhaustive(capsys):
    assert main(["search", "--qubits", "2", "--ones", "2", "--exhaustive", "--keep-top", "6"]) == 0
    lines = [json.loads(l) for l in capsys.readouterr().out.splitlines()]
    assert len(lines) == 6


def test_cli_dump(tmp_path, capsys):
    out = tmp_path / "phi.json"
    assert main(["dump", "--family", "phi", "--param", "index=4,1", "--out", str(out)]) == 0
    T = load_state(out)
    assert np.count_nonzero(T.array) == 4
    assert main(["gme", "--file", str(out), "--output", "csv"]) == 0
    assert "0.500000,0.750000" in capsys.readouterr().out


def test_cli_bench_table1(capsys):
    assert main(["bench", "table1"]) == 0
    rows = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
    assert len(rows) == 15
    assert all(r["pass"] == "pass" for r in rows)


def test_cli_bench_failure_exit(monkeypatch, capsys):
    refs = json.loads(json.dumps(bench.references()))
    refs["table1"][2]["lambda"] = 0.9
    monkeypatch.setattr(bench, "references", lambda: refs)
    assert main(["bench", "table1"]) == 1
    assert "FAIL" in capsys.readouterr().out


def test_cli_bench_table2_large_skips_over_cap(capsys):
    assert main(["bench", "table2", "--large", "--cap", "2000000"]) == 0
    rows = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
    status = {r["item"]: r["pass"] for r in rows}
    assert status["n=4 d=200"] == "skip"
    assert status["n=4 d=10"] == "pass"
    assert len(rows) == 11


def test_references_are_versioned():
    refs = bench.references()
    assert refs["version"] >= 1
    assert len(refs["table1"]) == 15 and len(refs["table3"]) == 6
