import json

import pytest

from adlv.cli import CSV_COLUMNS, EXIT_BUDGET, EXIT_FAIL, EXIT_OK, EXIT_USAGE, main


def run(capsys, *args):
    code = main(list(args))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_dim_s0(capsys):
    code, out, _ = run(capsys, "--group", "A1:adjoint sigma=id", "--cmd", "dim", "--w", "s0")
    assert code == EXIT_OK
    js = json.loads(out)
    assert js["entries"] == [{"kappa": 0, "nu": ["0"], "dim": 1}]
    assert js["info"]["shrunken"] is True


def test_dim_tau(capsys):
    code, out, _ = run(capsys, "--group", "A1", "--cmd", "dim", "--w", "tau1")
    assert code == EXIT_OK
    assert json.loads(out)["entries"] == [{"kappa": 1, "nu": ["0"], "dim": 0}]


def test_dim_with_class_reports(capsys):
    code, out, _ = run(capsys, "--group", "A1", "--cmd", "dim", "--w", "s0", "--b", "0:0")
    assert code == EXIT_OK
    js = json.loads(out)
    assert {k: js[k] for k in ("oracle", "d_w", "agree")} == {"oracle": 1, "d_w": "1", "agree": True}
    assert js["theorem"] == {"kind": "nonempty", "dim": 1}
    assert js["b"] == {"kappa": 0, "nu": ["0"]}


def test_parse_error_exit(capsys):
    code, _, err = run(capsys, "--group", "A2", "--cmd", "dim", "--w", "s9")
    assert code == EXIT_USAGE
    assert "s9" in err and "position 0" in err


@pytest.mark.parametrize("args", [
    ("--group", "A2", "--cmd", "nope"),
    ("--group", "A2", "--cmd", "dim"),
    ("--group", "A2", "--cmd", "sweep"),
    ("--group", "Q7", "--cmd", "dim", "--w", "s1"),
    ("--group", "A2", "--cmd", "table", "--max-len", "-1"),
    ("--group", "A2", "--cmd", "dim", "--w", "s1", "--format", "csv"),
    ("--group", "A2", "--cmd", "dim", "--w", "s1", "--b", "0:-1,0"),
])
def test_usage_errors(capsys, args):
    assert run(capsys, *args)[0] == EXIT_USAGE


def test_sweep_A1(capsys):
    code, out, err = run(capsys, "--group", "A1", "--cmd", "sweep", "--max-len", "6")
    assert code == EXIT_OK
    summary = json.loads(err.strip().splitlines()[-1])["summary"]
    assert summary["violations"] == 0
    assert summary["theorem_applicable"] == summary["agreements"] > 0
    for line in out.splitlines():
        rec = json.loads(line)
        assert set(rec) == {"w", "b", "oracle", "theorem", "d_w", "agree"}
        assert rec["agree"] in (True, None)


def test_sweep_jobs_do_not_change_output(capsys):
    one = run(capsys, "--group", "A2", "--cmd", "sweep", "--max-len", "5")
    two = run(capsys, "--group", "A2", "--cmd", "sweep", "--max-len", "5", "--jobs", "2")
    assert one[0] == two[0] == EXIT_OK
    assert one[1] == two[1]


def test_budget_exit(capsys, monkeypatch):
    code, out, _ = run(capsys, "--group", "A1", "--cmd", "sweep", "--max-len", "6", "--budget", "1")
    assert code == EXIT_BUDGET and out == ""
    monkeypatch.setenv("ADLV_BUDGET", "1")
    assert run(capsys, "--group", "A2", "--cmd", "dim", "--w", "s0 s1 s2 s0")[0] == EXIT_BUDGET


def test_table_csv_is_byte_stable(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for p in (a, b):
        assert run(capsys, "--group", "A1", "--cmd", "table", "--max-len", "4", "--format", "csv",
                   "--out", str(p))[0] == EXIT_OK
    assert a.read_bytes() == b.read_bytes()
    lines = a.read_text().splitlines()
    assert lines[0] == ",".join(CSV_COLUMNS)
    rows = [ln.split(",") for ln in lines[1:]]
    keys = [(int(r[0]), r[1]) for r in rows]
    assert keys == sorted(keys)
    assert len(rows) > 10


def test_table_json(capsys):
    code, out, _ = run(capsys, "--group", "A1", "--cmd", "table", "--max-len", "2")
    assert code == EXIT_OK
    objs = [json.loads(x) for x in out.splitlines()]
    assert all(set(o) == {"w", "entries"} for o in objs)


def test_missing_output_dir(tmp_path, capsys):
    code, _, err = run(capsys, "--group", "A1", "--cmd", "table", "--max-len", "2",
                       "--out", str(tmp_path / "missing" / "t.csv"))
    assert code == EXIT_USAGE
    assert "does not exist" in err


def test_cordial_cmd(capsys):
    code, out, _ = run(capsys, "--group", "A2", "--cmd", "cordial", "--max-len", "4")
    assert code == EXIT_OK
    recs = [json.loads(x) for x in out.splitlines()]
    assert all(r["cordial"] for r in recs if r["certificate"])


def test_target_cmd(capsys):
    code, out, _ = run(capsys, "--group", "A1", "--cmd", "target", "--w", "x=[]; lam=[4]; y=[s1]")
    assert code == EXIT_OK
    rec = json.loads(out)
    assert rec["ok"] and rec["a"] == "s1" and rec["gamma"] == ["2"]
    code, _, err = run(capsys, "--group", "A1", "--cmd", "target", "--w", "tau1")
    assert code == EXIT_FAIL and "l(w) != l(w1) + l(w2)" in err
    assert run(capsys, "--group", "A2", "--cmd", "target", "--w", "1")[0] == EXIT_USAGE
