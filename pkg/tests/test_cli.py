import csv
import io
import json

import numpy as np
import pytest

from telemix import cli, tables
from telemix.errors import DomainError
from telemix.states import matrix_to_json


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def _csv_rows(text):
    return list(csv.reader(line for line in text.splitlines() if not line.startswith("#")))


def test_analyze_werner(capsys):
    code, out, _ = run(capsys, "analyze", "--family", "werner", "--fw", "0.9")
    assert code == 0
    d = json.loads(out)
    assert d["f_opt"] == pytest.approx(0.933333, abs=1e-6)
    assert d["closed_form"]["f_opt"] == pytest.approx(d["f_opt"], abs=1e-12)


def test_analyze_new(capsys):
    code, out, _ = run(capsys, "analyze", "--family", "new", "--p", "0")
    d = json.loads(out)
    assert round(d["f_opt"], 6) == 0.777778
    assert d["chsh_violated"] is False


def test_analyze_matrix_file(tmp_path, capsys):
    path = tmp_path / "state.json"
    path.write_text(json.dumps(matrix_to_json(np.eye(4) / 4)))
    code, out, _ = run(capsys, "analyze", "--matrix", str(path))
    assert code == 0
    d = json.loads(out)
    assert d["s_lin"] == pytest.approx(1.0) and "closed_form" not in d


def test_analyze_bad_trace_exits_3(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(matrix_to_json(np.eye(4) * 0.225)))
    code, _, err = run(capsys, "analyze", "--matrix", str(path))
    assert code == 3
    assert "TraceNotOne" in err


def test_analyze_out_of_range_exits_3(capsys):
    code, _, err = run(capsys, "analyze", "--family", "mems", "--c", "1.5")
    assert code == 3 and "ParamOutOfRange" in err


@pytest.mark.parametrize("argv", [
    ["analyze", "--family", "werner"],
    ["analyze"],
    ["analyze", "--family", "wd", "--fw", "0.9"],
    ["sweep", "--family", "wd"],
])
def test_parse_failures_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err


def test_argparse_failure_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["table1", "--bogus"])
    assert exc.value.code == 2


def test_unreadable_matrix_exit_2(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    code, _, _ = run(capsys, "analyze", "--matrix", str(path))
    assert code == 2
    code, _, _ = run(capsys, "analyze", "--matrix", str(tmp_path / "missing.json"))
    assert code == 2


def test_table1_csv(capsys):
    code, out, _ = run(capsys, "table1")
    assert code == 0
    rows = _csv_rows(out)
    header, body = rows[0], rows[1:]
    assert len(body) == 16
    first = dict(zip(header, body[0]))
    assert float(first["f_wd"]) == pytest.approx(0.777775, abs=5e-6)
    assert all(dict(zip(header, r))["chsh_wd"] == "true" for r in body)
    assert all(dict(zip(header, r))["chsh_new"] == "false" for r in body)


def test_table_provenance_lines(capsys):
    _, out, _ = run(capsys, "table2")
    header = _csv_rows(out)[0]
    for col in header:
        assert f"# column {col}: " in out


def test_output_is_byte_identical(tmp_path, capsys):
    for cmd in (["table1"], ["table2"], ["fig1", "--step", "0.05"], ["sweep", "--family", "mems"]):
        a, b = tmp_path / "a", tmp_path / "b"
        assert cli.main(cmd + ["--out", str(a)]) == 0
        assert cli.main(cmd + ["--out", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()
        assert b"\r" not in a.read_bytes()


def test_csv_nine_significant_digits(capsys):
    _, out, _ = run(capsys, "fig1", "--step", "0.1")
    rows = _csv_rows(out)
    assert rows[0] == ["s_lin", "f_w", "f_mems", "classical"]
    assert rows[1][3] == "0.666666667"
    assert rows[-1][0] == "0.888888889"


def test_fig1_bad_step_exit_3(capsys):
    code, _, err = run(capsys, "fig1", "--step", "0")
    assert code == 3 and "DomainError" in err
    with pytest.raises(DomainError):
        tables.fig1(0.5)


def test_json_format(capsys):
    code, out, _ = run(capsys, "table2", "--format", "json")
    d = json.loads(out)
    assert len(d["rows"]) == 10 and d["columns"][0] == {"name": "s_lin", "provenance": "input"}


def test_sweep_with_simulator(capsys):
    code, out, _ = run(capsys, "sweep", "--family", "werner", "--step", "0.25", "--simulate")
    rows = _csv_rows(out)
    header = rows[0]
    assert header[-1] == "f_standard" and "# column f_standard: simulator" in out
    for r in rows[1:]:
        d = dict(zip(header, r))
        fw = float(d["fw"])
        assert float(d["f_standard"]) == pytest.approx((2 * fw + 1) / 3, abs=1e-8)


def test_sweep_wd(capsys):
    code, out, _ = run(capsys, "sweep", "--family", "wd", "--a", "0.7", "--step", "0.1")
    rows = _csv_rows(out)
    assert code == 0 and len(rows) == 6 and rows[1][0] == "0.6"


def test_sweep_bad_step():
    with pytest.raises(DomainError):
        tables.sweep_grid("new", 0.3)


def test_constants(capsys):
    code, out, _ = run(capsys, "constants")
    d = json.loads(out)
    assert d["mems_useful_slin"]["expr"] == "22/27"
    code, out, _ = run(capsys, "constants", "--format", "csv")
    assert out.splitlines()[0] == "name,expr,value"


def test_verify_quick(capsys):
    code, out, _ = run(capsys, "verify")
    assert code == 0
    checks = [l for l in out.splitlines() if l.startswith(("PASS", "FAIL"))]
    assert len(checks) >= 30
    assert all(l.startswith("PASS") for l in checks)


def test_verify_failure_exit_1(monkeypatch, capsys):
    from telemix import verify

    def broken(level, samples=None, seed=0):
        rep = verify.VerifyReport(level)
        rep.add("always_fails", 1.0, 0.0)
        return rep

    monkeypatch.setattr(verify, "run_checks", broken)
    code, out, _ = run(capsys, "verify")
    assert code == 1 and "FAIL  always_fails" in out and "1 failed: always_fails" in out


def test_sweep_table_invariants():
    t = tables.SweepTable("x", ["a", "b"], ["input", "closedform"])
    with pytest.raises(ValueError):
        t.append([1.0])
    with pytest.raises(ValueError):
        t.append([1.0, float("nan")])
    with pytest.raises(ValueError):
        tables.SweepTable("y", ["a"], ["guess"])


def test_module_entry_point():
    import subprocess
    import sys
    res = subprocess.run([sys.executable, "-m", "telemix", "constants"], capture_output=True, text=True)
    assert res.returncode == 0 and "classical_fidelity" in res.stdout
