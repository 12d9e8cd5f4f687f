import json
import math

import pytest

from qree.cli import main


def write(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(json.dumps(doc), encoding="utf-8")
    return str(path)


BELL = {"kind": "pure", "amplitudes": [[2**-0.5, 0], [0, 0], [0, 0], [2**-0.5, 0]]}
BD = {"kind": "family", "name": "bell_diagonal",
      "params": {"lambda1": 0.1, "lambda2": 0.15, "lambda3": 0.6, "lambda4": 0.15}}
MIXED = {"kind": "density", "matrix": [[[0.25 if i == j else 0, 0] for j in range(4)] for i in range(4)]}


def test_measure_bell(tmp_path, capsys):
    assert main(["measure", write(tmp_path, "bell.json", BELL), "--json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["concurrence"] == pytest.approx(1.0)
    assert out["eof"] == pytest.approx(math.log(2)) and out["ree"] == pytest.approx(math.log(2))


def test_measure_family_text(tmp_path, capsys):
    assert main(["measure", write(tmp_path, "bd.json", BD)]) == 0
    assert "0.020136" in capsys.readouterr().out


def test_measure_rejects_bad_trace(tmp_path, capsys):
    bad = json.loads(json.dumps(MIXED))
    bad["matrix"][0][0] = [0.15, 0]
    assert main(["measure", write(tmp_path, "bad.json", bad)]) == 2
    assert "trace" in capsys.readouterr().err


def test_missing_file_exit_code(tmp_path):
    assert main(["measure", str(tmp_path / "nope.json")]) == 2


def test_trace_command(tmp_path):
    out = tmp_path / "trace.json"
    assert main(["trace", write(tmp_path, "bd.json", BD), "-o", str(out)]) == 0
    data = json.loads(out.read_text(encoding="utf-8"))
    assert data["boundary_at_step3"] is True and data["q0"] is None


def test_trace_separable_input(tmp_path):
    out = tmp_path / "trace.json"
    assert main(["trace", write(tmp_path, "mixed.json", MIXED), "-o", str(out)]) == 0
    assert json.loads(out.read_text(encoding="utf-8"))["separable"] is True


def test_oracle_command(tmp_path, capsys):
    assert main(["oracle", write(tmp_path, "mixed.json", MIXED), "--restarts", "1"]) == 0
    assert json.loads(capsys.readouterr().out)["ree"] <= 1e-6


def test_verify_single_family(capsys):
    assert main(["verify", "--family", "gh", "--samples", "2", "--seed", "3", "--no-oracle", "--json"]) == 0
    rows = json.loads(capsys.readouterr().out)
    assert rows and all(r["pass"] for r in rows)


def test_verify_reproducible(capsys):
    args = ["verify", "--family", "ht", "--samples", "2", "--seed", "5", "--no-oracle", "--json"]
    main(args)
    first = capsys.readouterr().out
    main(args)
    assert capsys.readouterr().out == first


def test_verify_failure_exit_code(capsys):
    # an impossible tolerance makes the matrix rows fail
    assert main(["verify", "--family", "bd", "--samples", "1", "--tol", "1e-30", "--no-oracle"]) == 1
    assert "failing rows" in capsys.readouterr().out


def test_bad_arguments_exit_two():
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--samples", "0"])
    assert exc.value.code == 2
