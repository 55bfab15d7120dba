import csv
import io
import json
import subprocess
import sys

import pytest

from supercong.cli import FIELDS, main, parse_config


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_json_lines(capsys):
    code, out, err = run(capsys, "--claims", "thm1.1a,thm1.1b", "--pmax", "60", "--workers", "1")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 2 * 15
    for line in lines:
        rec = json.loads(line)
        assert tuple(rec) == FIELDS
        assert rec["status"] == "pass"
        assert isinstance(rec["lhs"], str) and rec["lhs"].isdigit()
    assert "thm1.1a: 15 pass, 0 fail, 0 n/a" in err
    assert len(err.strip().splitlines()) == 1


def test_csv(capsys, tmp_path):
    out_file = tmp_path / "r.csv"
    code, out, err = run(capsys, "--claims", "eq1.3", "--pmax", "13", "--format", "csv", "--out", str(out_file), "--workers", "1")
    assert code == 0 and out == ""
    rows = list(csv.DictReader(io.StringIO(out_file.read_text(encoding="utf-8"))))
    assert tuple(rows[0]) == FIELDS
    assert {r["status"] for r in rows} == {"pass"}
    assert rows[0]["parameter"].startswith("p=5,m=")
    assert "p=5,m=-3" in [r["parameter"] for r in rows]


def test_identity_claims(capsys):
    code, out, _ = run(capsys, "--claims", "thm1.4a", "--nmax", "60", "--workers", "1")
    assert code == 0
    statuses = [json.loads(l)["status"] for l in out.splitlines()]
    assert statuses.count("pass") == 11


def test_selftest_fail_exit_code(capsys):
    code, out, err = run(capsys, "--claims", "selftest-fail", "--pmax", "11", "--workers", "1")
    assert code == 1
    assert all(json.loads(l)["status"] == "fail" for l in out.splitlines())
    assert "2 fail" not in err and "3 fail" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["--pmax", "4"],
        ["--pmin", "3"],
        ["--claims", "thm7"],
        ["--claims", ""],
        ["--workers", "0"],
        ["--format", "xml"],
        ["--bogus"],
    ],
)
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert "usage" in err


def test_workers_env(monkeypatch):
    monkeypatch.setenv("VERIFY_WORKERS", "3")
    assert parse_config(["--claims", "thm1.1a"]).workers == 3
    assert parse_config(["--claims", "thm1.1a", "--workers", "2"]).workers == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "supercong", "--claims", "cor2.3d1", "--pmax", "30", "--workers", "2"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert len(proc.stdout.splitlines()) == 8
    assert proc.stdout.endswith("\n")
