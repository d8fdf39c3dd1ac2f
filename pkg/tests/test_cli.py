import csv
import io
import json
import subprocess
import sys

import pytest

from weylcode.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_encode_supplied(capsys):
    code, out, _ = run(capsys, "encode", "0.5,0.3,0.7,0.1")
    assert code == 0
    (row,) = rows(out)
    assert row["code"] == "1,1,3,1"
    assert row["word"] == "2,1,3,0"
    assert row["special"] == "1,1,0,1"
    assert row["d"] == "1,2,2,3"
    assert run(capsys, "encode", "0.1,0.2", "--format", "text")[1] == "1,2\n"


def test_encode_duplicate_fails(capsys):
    code, out, err = run(capsys, "encode", "0.1,0.1")
    assert code != 0 and out == ""
    assert err.startswith("error: code=distinct_violation")


def test_encode_sampled_json_has_seed(capsys):
    _, out, _ = run(capsys, "encode", "--n", "6", "--seed", "3", "--format", "json")
    obj = json.loads(out)
    assert obj["seed"] == 3 and len(obj["code"]) == 6


def test_encode_bad_file_reports_line(capsys, tmp_path):
    f = tmp_path / "in.txt"
    f.write_text("0.1,0.2\n\n0.3,zz\n")
    code, _, err = run(capsys, "encode", "--input", str(f))
    assert code == 1 and "code=parse" in err and "line 3" in err


def test_transfer_iterations(capsys):
    assert run(capsys, "transfer", "1,1,3,1", "--format", "text")[1] == "1,2,1\n"
    assert run(capsys, "transfer", "1,1,3,1", "--iterations", "2", "--format", "text")[1] == "1,2,1\n1,1\n"
    code, _, err = run(capsys, "transfer", "1,1,3,1", "--iterations", "4")
    assert code == 1 and "insufficient_data" in err
    code, _, err = run(capsys, "transfer", "1,3")
    assert code == 1 and "code=parse" in err


def test_reconstruct(capsys):
    _, out, _ = run(capsys, "reconstruct", "--n", "1000000", "--m", "3", "--seed", "4")
    table = rows(out)
    assert [r["j"] for r in table] == ["1", "2", "3"]
    assert all(float(r["abs_error"]) < 1e-2 for r in table)
    _, out, _ = run(capsys, "reconstruct", "1,1,1,1,1,1", "--m", "1")
    assert float(rows(out)[0]["estimate"]) == 1.0
    code, _, err = run(capsys, "reconstruct", "1,1,1", "--m", "4")
    assert code == 1 and "insufficient_data" in err


def test_rsk_and_jdt(capsys):
    _, out, _ = run(capsys, "rsk", "2,1,3", "--format", "json")
    assert json.loads(out) == {"P": [[1, 3], [2]], "Q": [[1, 3], [2]], "shape": [2, 1]}
    _, out, _ = run(capsys, "rsk", "2,1,3")
    assert [r["entries"] for r in rows(out)] == ["1,3", "2", "1,3", "2"]
    assert run(capsys, "jdt", "[[1,2],[3]]", "--format", "text")[1] == "[[1],[2]]\n"
    _, out, _ = run(capsys, "jdt", "[[1,2],[3]]")
    assert rows(out)[0]["path"] == "∅;1;1,1"
    code, _, err = run(capsys, "jdt", "[[2,1]]")
    assert code == 1 and "code=" in err


def test_experiment_plancherel(capsys):
    _, out, _ = run(capsys, "experiment", "plancherel", "--n", "4", "--trials", "100000")
    table = rows(out)
    assert [r["shape"] for r in table] == ["4", "3,1", "2,2", "2,1,1", "1,1,1,1"]
    for r, k in zip(table, [1, 9, 4, 9, 1]):
        assert float(r["frequency"]) == pytest.approx(k / 24, abs=0.005)
    assert float(table[0]["chi2_pvalue"]) > 1e-3


def test_experiment_distinguish_header_and_note(capsys):
    _, out, err = run(capsys, "experiment", "distinguish", "--n", "1-3", "--trials", "20000")
    assert out.splitlines()[0] == "n,trials,acceptance_rate,iqr_x1"
    assert len(rows(out)) == 3
    assert "very slow" in err


def test_experiment_reconstruct_and_jdt(capsys):
    _, out, _ = run(capsys, "experiment", "reconstruct", "--n", "1000", "--trials", "5", "--m", "2")
    assert len(rows(out)) == 2
    _, out, _ = run(capsys, "experiment", "jdt-equiv", "--n", "2-5")
    assert all(r["jdt_mismatches"] == "0" and r["tree_mismatches"] == "0" for r in rows(out))


def test_trials_env_override(capsys, monkeypatch):
    monkeypatch.setenv("WEYLCODE_TRIALS", "123")
    _, out, _ = run(capsys, "experiment", "plancherel", "--n", "2")
    assert sum(int(r["count"]) for r in rows(out)) == 123
    monkeypatch.setenv("WEYLCODE_TRIALS", "many")
    assert run(capsys, "experiment", "plancherel", "--n", "2")[0] == 1


def test_output_file_is_deterministic(tmp_path):
    outputs = []
    for name in ("a.csv", "b.csv"):
        path = tmp_path / name
        subprocess.run(
            [sys.executable, "-m", "weylcode", "experiment", "distinguish", "--n", "1-4",
             "--trials", "5000", "--seed", "9", "--out", str(path)],
            check=True, capture_output=True,
        )
        outputs.append(path.read_bytes())
    assert outputs[0] == outputs[1] and outputs[0]
