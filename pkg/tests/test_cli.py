import csv
import io
import json
import subprocess
import sys

import pytest

from twisted_moment import cli
from twisted_moment.report import SWEEP_COLUMNS


def run(args, capsys):
    code = cli.main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture(autouse=True)
def _no_env_outdir(monkeypatch):
    monkeypatch.delenv(cli.OUTPUT_DIR_ENV, raising=False)


def strip_metadata(text):
    d = json.loads(text)
    d.pop("metadata")
    return d


def test_verify_theorem_json(capsys):
    code, out, _ = run(["verify-theorem", "--p", "3", "--q", "5", "--T", "40", "--format", "json"], capsys)
    assert code == 0
    d = json.loads(out)
    assert set(d) == {"config", "plan", "results", "invariants", "metadata"}
    (res,) = d["results"]
    assert res["p"] == 3 and res["q"] == 5
    assert isinstance(res["lhs"], str) and float(res["lhs"]) < 0
    assert d["metadata"]["passed"] is True
    assert all(inv["passed"] for inv in d["invariants"])


@pytest.mark.parametrize("argv", [
    ["verify-theorem", "--p", "4", "--q", "5", "--T", "40"],
    ["verify-theorem", "--p", "9", "--q", "5", "--T", "40"],
    ["verify-theorem", "--p", "5", "--q", "5", "--T", "40"],
    ["verify-theorem", "--p", "3", "--q", "5", "--T", "1"],
    ["verify-corollary", "--p", "3", "--q", "5", "--T", "nan"],
    ["sweep", "--p", "3,4", "--q", "5", "--T", "20"],
    ["verify-theorem", "--p", "3", "--q", "5", "--T", "20", "--plan", "dual_cutoff=10"],
    ["verify-theorem", "--p", "3", "--q", "5", "--T", "20", "--plan", "nonsense=1"],
])
def test_invalid_input_exit_code(argv, capsys):
    code, out, err = run(argv, capsys)
    assert code == cli.EXIT_INVALID and out == "" and "error" in err


def test_malformed_flag_exit_code(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["sweep", "--p", "3,x", "--q", "5", "--T", "20"])
    assert exc.value.code == cli.EXIT_INVALID


def test_sweep_csv_rows(capsys):
    code, out, _ = run(["sweep", "--p", "3,5,7", "--q", "5,7,11", "--T", "20,40", "--format", "csv",
                        "--workers", "1", "--quiet"], capsys)
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert tuple(rows[0]) == SWEEP_COLUMNS
    assert len(rows) == 7 * 2  # 3*3 pairs minus (5,5), (7,7)
    keys = [(int(r["p"]), int(r["q"]), float(r["T"])) for r in rows]
    assert keys == sorted(keys)


def test_sweep_pool_matches_serial(capsys):
    base = ["sweep", "--p", "5,7", "--q", "3", "--T", "20", "--quiet"]
    _, serial, _ = run(base + ["--workers", "1"], capsys)
    _, pooled, _ = run(base + ["--workers", "2"], capsys)
    assert strip_metadata(serial) == strip_metadata(pooled)


def test_json_deterministic(capsys):
    argv = ["verify-corollary", "--p", "5", "--q", "7", "--T", "20", "--quiet"]
    _, a, _ = run(argv, capsys)
    _, b, _ = run(argv, capsys)
    da, db = json.loads(a), json.loads(b)
    da.pop("metadata"), db.pop("metadata")
    assert json.dumps(da, sort_keys=True) == json.dumps(db, sort_keys=True)


def test_csv_and_json_same_digits(capsys):
    base = ["verify-theorem", "--p", "7", "--q", "3", "--T", "20", "--quiet"]
    _, j, _ = run(base + ["--format", "json"], capsys)
    _, c, _ = run(base + ["--format", "csv"], capsys)
    (row,) = list(csv.DictReader(io.StringIO(c)))
    (res,) = json.loads(j)["results"]
    for k in SWEEP_COLUMNS:
        assert str(res[k]) == row[k]
        if k not in ("p", "q"):
            assert float(row[k]) == float(res[k])  # repr round-trips exactly


def test_output_dir_env(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv(cli.OUTPUT_DIR_ENV, str(tmp_path / "reports"))
    code, out, _ = run(["verify-theorem", "--p", "3", "--q", "7", "--T", "20", "--quiet"], capsys)
    assert code == 0 and out == ""
    assert json.loads((tmp_path / "reports" / "verify-theorem.json").read_text())["results"]


def test_explicit_output_path(tmp_path, capsys):
    dest = tmp_path / "x.csv"
    code, out, _ = run(["intermediates", "--p", "3", "--q", "5", "--T", "20", "--format", "csv",
                        "--output", str(dest)], capsys)
    assert code == 0
    assert "PASS" in out  # table goes to stdout when the report goes to a file
    row = next(csv.DictReader(dest.open()))
    assert float(row["decomposition_residual"]) <= 1e-6
    assert "error_estimates.f1_0" in row


def test_io_failure_exit_code(tmp_path, capsys):
    blocker = tmp_path / "file"
    blocker.write_text("")
    code, _, err = run(["selftest", "--output", str(blocker / "sub" / "r.json"), "--quiet"], capsys)
    assert code == cli.EXIT_IO and "cannot write" in err


def test_selftest_and_fault(capsys):
    code, out, _ = run(["selftest", "--quiet"], capsys)
    assert code == 0
    code, out, err = run(["selftest", "--inject-fault", "gauss_sum_sign", "--quiet"], capsys)
    assert code == cli.EXIT_TOLERANCE
    failed = {inv["name"] for inv in json.loads(out)["invariants"] if not inv["passed"]}
    assert failed == {"gauss_sum", "cosine_twisted_sum"}
    assert "gauss_sum" in err


def test_tolerance_exceeded_exit_code(capsys):
    # the residual/main ratio at T = 160 is reported as an invariant and exceeds 0.1
    code, out, err = run(["verify-theorem", "--p", "5", "--q", "7", "--T", "160", "--quiet"], capsys)
    assert code == cli.EXIT_TOLERANCE
    failed = [inv for inv in json.loads(out)["invariants"] if not inv["passed"]]
    assert [inv["name"] for inv in failed] == ["residual_over_main"]


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "twisted_moment", "verify-theorem", "--p", "2",
                        "--q", "5", "--T", "20"], capture_output=True, text=True)
    assert r.returncode == cli.EXIT_INVALID
