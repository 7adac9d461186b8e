import csv
import io
import json

import pytest

from solweights import cli
from solweights.weights import api


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture(autouse=True)
def _fresh_memo():
    api.reset_memo()
    yield
    api.reset_memo()


def test_weights_example(capsys, tmp_path):
    code, out, _ = run(capsys, "weights", "--spec", "CS_U", "--d-offset", "3l+6", "--l", "1",
                       "--cache-dir", str(tmp_path))
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert rows == [{"spec": "CS_U", "system": "F", "l": "1", "d": "9", "offset": "3l+6", "w": "-11"}]


def test_absolute_defect_filter(capsys, tmp_path):
    code, out, _ = run(capsys, "weights", "--spec", "CS_U", "--d-offset", "9", "--l", "1",
                       "--system", "F", "--cache-dir", str(tmp_path), "--format", "json")
    assert code == 0
    assert [r["w"] for r in json.loads(out)] == [-11]


@pytest.mark.parametrize("argv", [
    ["weights", "--l", "7"],
    ["weights", "--l", "3..1"],
    ["weights", "--l", "x"],
    ["weights", "--spec", "NOPE"],
    ["weights", "--d-offset", "l*l"],
    ["weights", "--workers", "0"],
    ["frobnicate"],
    ["verify", "--format", "xml"],
])
def test_usage_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert "usage error" in err


def test_computation_error_exit_1(capsys, tmp_path):
    code, _, err = run(capsys, "lie", "--branch", "1", "--output", str(tmp_path / "missing" / "x.csv"))
    assert code == 1
    assert "error" in err


def test_formats(capsys, tmp_path):
    base = ["weights", "--spec", "R17p", "--l", "0", "--system", "F", "--cache-dir", str(tmp_path)]
    _, out_csv, _ = run(capsys, *base)
    _, out_json, _ = run(capsys, *base, "--format", "json")
    _, out_md, _ = run(capsys, *base, "--format", "markdown")
    from_csv = [{k: int(v) if k in ("l", "d", "w") else v for k, v in r.items()}
                for r in csv.DictReader(io.StringIO(out_csv))]
    assert from_csv == json.loads(out_json)
    assert out_md.splitlines()[0] == "| spec | system | l | d | offset | w |"
    assert {r["d"]: r["w"] for r in from_csv} == {4: 2, 6: 0}


def test_output_file(capsys, tmp_path):
    target = tmp_path / "rows.csv"
    code, out, _ = run(capsys, "weights", "--spec", "R17p", "--l", "0", "--system", "H",
                       "--output", str(target))
    assert code == 0 and out == ""
    assert target.read_text().startswith("spec,system,l,d,offset,w")


def test_workers_do_not_change_output(capsys, tmp_path):
    base = ["weights", "--spec", "R17p", "--spec", "CS_EZ", "--spec", "R17", "--l", "0"]
    _, serial, _ = run(capsys, *base, "--cache-dir", str(tmp_path / "a"))
    _, pooled, _ = run(capsys, *base, "--workers", "2", "--cache-dir", str(tmp_path / "b"))
    assert serial == pooled


def test_cache_env_var(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv(api.CACHE_ENV, str(tmp_path))
    code, _, _ = run(capsys, "weights", "--spec", "R17p", "--l", "0", "--system", "F")
    assert code == 0
    assert (tmp_path / "w_R17p_F_l0.json").exists()


def test_verify_l1_f(capsys, tmp_path):
    code, out, _ = run(capsys, "verify", "--system", "F", "--l", "1", "--cache-dir", str(tmp_path),
                       "--format", "json")
    assert code == 0
    rows = json.loads(out)
    assert rows and all(r["ok"] for r in rows)
    assert {"CS_U", "S", "R152"} <= {r["row"] for r in rows}


def test_lie_and_owc(capsys):
    code, out, _ = run(capsys, "lie", "--format", "json")
    assert code == 0
    checks = [r for r in json.loads(out) if r["kind"] == "column_check"]
    assert len(checks) == 4 and all(r["ok"] for r in checks)
    code, out, _ = run(capsys, "owc", "--branch", "3", "--l", "0..2")
    assert code == 0
    assert out.startswith("check,branch,ok")


def test_parse_helpers():
    assert cli.parse_l_range("0..4") == [0, 1, 2, 3, 4]
    assert cli.parse_l_range("2") == [2]
    assert cli.parse_offset("3l+6") == (3, 6)
    assert cli.parse_offset("l-1") == (1, -1)
    assert cli.parse_offset("12") == (None, 12)
