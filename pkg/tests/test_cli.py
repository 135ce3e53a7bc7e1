import io
import json
import subprocess
import sys

import pytest

from uhankel.cli import SweepRow, crossover_bracket, fmt, main, parse_complex, parse_real, read_csv


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


def test_parse_numbers():
    assert parse_real("1/4") == 0.25
    assert parse_real("0.5") == 0.5
    assert parse_complex("1+2j") == 1 + 2j
    assert parse_complex("1-2i") == 1 - 2j
    assert parse_complex("3/4") == 0.75


def test_revert_f_lambda_half():
    code, out = run("revert", "--a", "1.5,1.75,1.875,1.9375")
    assert code == 0
    d = json.loads(out)
    assert d["A"]["A2"]["re"] == -1.5
    assert d["A"]["A3"]["re"] == 2.75
    assert d["A"]["A4"]["re"] == -5.625
    assert d["max_discrepancy"] < 1e-10


def test_revert_family_matches_explicit_list():
    _, a = run("revert", "--family", "f_lambda", "--lambda", "1/2")
    _, b = run("revert", "--a", "1.5,1.75,1.875,1.9375")
    assert json.loads(a)["A"] == json.loads(b)["A"]


def test_revert_identity_and_higher_order():
    code, out = run("revert", "--a", "0,0,0", "--order", "7")
    d = json.loads(out)
    assert code == 0 and all(v == {"re": 0.0, "im": 0.0} for v in d["A"].values())
    assert "closed_form" not in d


def test_revert_random_discrepancy():
    code, out = run("revert", "--a", "0.3-0.7j,-0.2+0.1j,0.9j,-0.45")
    assert code == 0 and json.loads(out)["max_discrepancy"] < 1e-10


def test_revert_parse_failure(capsys):
    code, _ = run("revert", "--a", "1.5,banana")
    assert code == 1
    assert "not a complex number" in capsys.readouterr().err


def test_verify_h3_lambda_one():
    code, out = run("verify", "--target", "h3", "--lambda", "1")
    d = json.loads(out)
    assert code == 0
    assert d["closed_form"] == 1 and d["optimizer_max"] == pytest.approx(1, abs=1e-6)


def test_verify_h2_half():
    code, out = run("verify", "--target", "h2", "--lambda", "0.5")
    assert code == 0 and json.loads(out)["closed_form"] == 0.875


def test_verify_domain_error(capsys):
    code, out = run("verify", "--target", "h3", "--lambda", "0")
    assert code == 1 and out == ""
    assert "lambda" in capsys.readouterr().err


def test_verify_unclaimed_region():
    code, out = run("verify", "--target", "h2", "--lambda", "0.5", "--enforce-a3", "off")
    d = json.loads(out)
    assert code == 0 and d["claimed"] is False and d["optimizer_max"] > d["closed_form"]


def test_verify_invariant_violation_exit_code():
    # three iterations cannot settle the simplex; report still emitted
    code, out = run("verify", "--target", "h3", "--lambda", "0.6", "--refine", "3", "--tol", "1e-12")
    d = json.loads(out)
    assert code == 2 and d["checks"]["converged"] is False


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as info:
        main(["verify", "--target", "h4", "--lambda", "1"])
    assert info.value.code == 1


def test_extremal_certificates():
    code, out = run("extremal", "f2", "--lambda", "1")
    d = json.loads(out)
    assert code == 0
    assert d["H3_1_inverse"]["re"] == -1
    assert d["deviation"] == pytest.approx(0.998, abs=1e-3)

    d = json.loads(run("extremal", "f1", "--lambda", "0.2")[1])
    assert d["H3_1_inverse"]["re"] == pytest.approx(-0.01, abs=1e-15)

    d = json.loads(run("extremal", "identity")[1])
    assert d["deviation"] == 0 and d["H2_2_inverse"] == {"re": 0.0, "im": 0.0}
    assert all(v == {"re": 0.0, "im": 0.0} for v in d["a"].values())


def test_extremal_unknown_name():
    with pytest.raises(SystemExit) as info:
        main(["extremal", "koebe"])
    assert info.value.code == 1


def sweep(tmp_path, name, *extra):
    path = tmp_path / name
    code, _ = run("sweep", "--oracle-grid", "60", "--out", str(path), *extra)
    return code, path


def test_sweep_h3_crossover_and_roundtrip(tmp_path):
    code, path = sweep(tmp_path, "h3.csv", "--target", "h3", "--lambda-min", "0.05", "--lambda-max", "1", "--steps", "20")
    assert code == 0
    text = path.read_bytes()
    assert b"\r" not in text
    assert text.splitlines()[0].decode() == (
        "lambda,target,closed_form,optimizer_max,oracle_max,gap,a2_mod,a2_arg,c1_mod,c1_arg,"
        "c2_mod,c2_arg,c3_mod,c3_arg,wall_time_ms"
    )
    with open(path, encoding="utf-8") as fh:
        rows = read_csv(fh)
    assert len(rows) == 20
    lo, hi = crossover_bracket(rows)
    assert lo <= 0.25 < hi or lo < 0.25 <= hi
    for r in rows:
        assert r.gap == pytest.approx(r.closed_form - r.optimizer_max, abs=1e-12)
        assert r.c1_mod <= 1 + 1e-9
        assert r.c2_mod <= 0.5 * (1 - r.c1_mod**2) + 1e-9
        # values written at 15 significant digits parse back exactly
        assert fmt(r.optimizer_max) == fmt(float(fmt(r.optimizer_max)))


def test_sweep_h2_gaps(tmp_path):
    code, path = sweep(tmp_path, "h2.csv", "--target", "h2", "--lambda-min", "0.2", "--lambda-max", "0.9", "--steps", "5")
    assert code == 0
    with open(path, encoding="utf-8") as fh:
        rows = read_csv(fh)
    assert all(abs(r.gap) <= 1e-3 for r in rows)


def test_sweep_degenerate_range(tmp_path):
    code, path = sweep(tmp_path, "d.csv", "--target", "h3", "--lambda-min", "0.4", "--lambda-max", "0.4", "--steps", "2")
    lines = path.read_text().splitlines()
    assert code == 0 and len(lines) == 3 and lines[1] == lines[2]


def test_sweep_json_and_parallel_agree(tmp_path):
    args = ("--target", "h3", "--lambda-min", "0.1", "--lambda-max", "0.5", "--steps", "3")
    _, serial = sweep(tmp_path, "s.json", *args, "--format", "json")
    _, parallel = sweep(tmp_path, "p.json", *args, "--format", "json", "--workers", "2")
    assert serial.read_bytes() == parallel.read_bytes()
    data = json.loads(serial.read_text())
    assert [d["lambda"] for d in data] == [0.1, 0.3, 0.5]


def test_sweep_bad_range_and_unwritable(tmp_path):
    code, _ = run("sweep", "--target", "h3", "--lambda-min", "0.5", "--lambda-max", "0.2", "--steps", "3")
    assert code == 1
    code, _ = sweep(tmp_path, "missing/dir/x.csv", "--target", "h3", "--lambda-min", "0.5", "--lambda-max", "0.6", "--steps", "2")
    assert code == 1


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "uhankel", "verify", "--target", "h3", "--lambda", "0"],
        capture_output=True,
        text=True,
    )
    assert res.returncode == 1
