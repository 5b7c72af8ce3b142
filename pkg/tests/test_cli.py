from __future__ import annotations

import csv
import io
import json

import pytest

from adlab import certio
from adlab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_length_json(capsys):
    code, out = run(capsys, "length", "5")
    row = json.loads(out)
    assert code == 0 and row["upper"] == "2" and row["status"] == "PROVEN"


def test_length_csv_columns(capsys):
    code, out = run(capsys, "length", "103", "--csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert list(rows[0]) == ["n", "lower", "upper", "status", "witness"]
    assert rows[0]["lower"] == rows[0]["upper"] == "3"


def test_length_budget_exit(capsys):
    code, out = run(capsys, "length", "150", "--bases", "2,3")
    assert code == 3 and json.loads(out)["upper"] == ""


def test_generator_flags_exclusive(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["length", "5", "--primes", "2", "--bases", "3"])
    assert exc.value.code == 2


def test_bad_caps_usage(capsys):
    assert main(["length", "5", "--caps", "2:5"]) == 2


def test_sphere_and_ball(capsys, tmp_path):
    code, out = run(capsys, "sphere", "--h", "1", "--window", "10", "--csv")
    ns = [int(r["n"]) for r in csv.DictReader(io.StringIO(out))]
    assert ns == [-9, -8, -6, -4, -3, -2, -1, 1, 2, 3, 4, 6, 8, 9]
    code, out = run(capsys, "ball", "--h", "2", "--window", "5", "--cache-dir", str(tmp_path))
    first = json.loads(out)
    code, out = run(capsys, "ball", "--h", "2", "--window", "5", "--cache-dir", str(tmp_path))
    assert json.loads(out) == first and first["counts"]["2"] == 2


def test_lambda_with_evidence(capsys, tmp_path):
    code, out = run(capsys, "lambda", "--h", "2", "--emit-evidence", str(tmp_path))
    obj = json.loads(out)
    assert code == 0 and obj["value"] == 5 and obj["status"] == "PROVEN"
    code, out = run(capsys, "verify", str(tmp_path / "index.json"))
    assert code == 0 and json.loads(out)["results"][0]["valid"]


def test_lambda_frontier_exit(capsys):
    code, out = run(capsys, "lambda", "--h", "3", "--nmax", "40")
    assert code == 3 and json.loads(out)["lower_bound"] == 41


def test_delta_and_search(capsys):
    code, out = run(capsys, "delta", "12")
    assert json.loads(out)["primes"] == [2, 3, 5, 7, 13]
    code, out = run(capsys, "delta-search", "--max-n", "1000", "--top", "3", "--csv")
    assert len(out.strip().splitlines()) == 4


def test_obstruct_and_verify(capsys, tmp_path):
    path = tmp_path / "c.json"
    code, out = run(capsys, "obstruct", "--primes", "2", "--h", "1", "--out", str(path))
    assert code == 0
    assert run(capsys, "verify", str(path))[0] == 0
    obj = json.loads(path.read_text())
    obj["payload"]["lower"] = "5"
    path.write_text(json.dumps(obj))
    assert run(capsys, "verify", str(path))[0] == 1
    path.write_text("{")
    code, out = run(capsys, "verify", str(path))
    assert code == 1 and "char" in json.loads(out)["results"][0]["error"]


def test_two_power_scan(capsys, tmp_path):
    path = tmp_path / "s.json"
    code, out = run(capsys, "two-power-scan", "--targets", "149,151", "--cap2", "512", "--cap3", "324", "--out", str(path))
    assert code == 0 and json.loads(out)["payload"]["solutions"] == []
    assert certio.read(path).payload["status"] == "CAP_CONDITIONAL"


def test_cache_gc(capsys, tmp_path):
    code, out = run(capsys, "cache", "gc", "--cache-dir", str(tmp_path))
    assert code == 0 and json.loads(out) == {"removed": []}
