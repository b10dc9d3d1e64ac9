import json
import subprocess
import sys

import pytest


def run_cli(*args, expect_code=0):
    proc = subprocess.run([sys.executable, "-m", "implbases", *args],
                          capture_output=True)
    assert proc.returncode == expect_code, (
        args, proc.returncode, proc.stderr.decode())
    return proc


def test_compute_proper_listing(toy_context_path):
    out = run_cli("compute", toy_context_path).stdout.decode()
    lines = out.strip().split("\n")
    assert "a2 a3 a5 -> a1" in lines
    assert "a3 a4 a5 -> a1" in lines
    assert "a3 a4 -> a2" in lines
    assert lines[-1].startswith("# proper: implications=")


def test_compute_both_bases(toy_context_path):
    out = run_cli("compute", toy_context_path, "--base", "both").stdout.decode()
    assert "# base=proper" in out and "# base=stem" in out
    assert "# stem: implications=6" in out


def test_compute_json(toy_context_path):
    out = run_cli("compute", toy_context_path, "--format", "json").stdout
    payload = json.loads(out)
    assert payload["attributes"] == 5
    imps = payload["bases"]["proper"]["implications"]
    assert {"premise": ["a2", "a3", "a5"], "conclusion": ["a1"]} in imps


def test_compute_full_relation_empty_premise(tmp_path):
    path = tmp_path / "full.cxt"
    path.write_text("B\n\n3\n3\n\no1\no2\no3\na1\na2\na3\nXXX\nXXX\nXXX\n")
    out = run_cli("compute", str(path)).stdout.decode()
    assert out.splitlines()[0] == "-> a1 a2 a3"


def test_compute_parse_error_exit(tmp_path):
    path = tmp_path / "bad.cxt"
    path.write_text("B\n\n2\n2\n\no1\no2\na1\na2\nX?\n..\n")
    proc = run_cli("compute", str(path), expect_code=2)
    assert b"line 10" in proc.stderr and b"column 2" in proc.stderr


def test_compute_empty_context_file_rejected(tmp_path):
    path = tmp_path / "empty.cxt"
    path.write_text("B\n\n0\n0\n\n")
    proc = run_cli("compute", str(path), expect_code=2)
    assert b"empty" in proc.stderr


def test_compute_missing_file(tmp_path):
    run_cli("compute", str(tmp_path / "nope.cxt"), expect_code=2)


def test_compute_stem_size_guard(tmp_path):
    rows = "\n".join("." * 25 for _ in range(2))
    names = "\n".join(f"o{i}" for i in range(2)) + "\n" + \
        "\n".join(f"a{i}" for i in range(25))
    path = tmp_path / "wide.cxt"
    path.write_text(f"B\n\n2\n25\n\n{names}\n{rows}\n")
    proc = run_cli("compute", str(path), "--base", "stem", expect_code=2)
    assert b"size guard" in proc.stderr
    # overridable
    run_cli("compute", str(path), "--base", "stem", "--max-stem-attrs", "25")


def test_gen_p_zero_all_blank():
    out = run_cli("gen", "--model", "single", "--objects", "3",
                  "--attributes", "3", "--p", "0", "--seed", "1").stdout.decode()
    body = out.split("\n")
    assert body.count("...") == 3


def test_gen_deterministic_bytes():
    args = ("gen", "--model", "single", "--objects", "6", "--attributes", "4",
            "--p", "0.5", "--seed", "99")
    assert run_cli(*args).stdout == run_cli(*args).stdout


def test_gen_multi_header_records_probabilities():
    import math

    out = run_cli("gen", "--model", "multi", "--r-size", "5",
                  "--attributes", "10", "--objects", "20", "--x", "2",
                  "--seed", "7").stdout.decode()
    probs_line = next(l for l in out.split("\n") if "column_probs=" in l)
    probs = [float(v) for v in probs_line.split("=", 1)[1].split(",")]
    assert probs[:5] == [1 / math.log(10)] * 5
    assert probs[5:] == [0.5] * 5


def test_gen_output_round_trips(tmp_path):
    path = tmp_path / "gen.cxt"
    run_cli("gen", "--objects", "4", "--attributes", "3", "--p", "0.5",
            "--seed", "3", "--out", str(path))
    run_cli("compute", str(path))


def test_gen_usage_errors():
    run_cli("gen", "--objects", "3", "--attributes", "3", "--p", "1.5",
            expect_code=2)
    run_cli("gen", "--model", "multi", "--objects", "3", "--attributes", "2",
            "--r-size", "1", expect_code=2)


def test_bounds_row_values():
    out = run_cli("bounds", "--attributes", "50", "--objects", "50",
                  "--p", "0.5", "--c", "1").stdout.decode()
    row = next(l for l in out.split("\n") if l.startswith("avg_pp_exponent"))
    assert float(row.split("=")[1]) == pytest.approx(5.81288836566178, abs=1e-9)
    lower = next(l for l in out.split("\n") if l.startswith("lower_exponent"))
    assert float(lower.split("=")[1]) == pytest.approx(4.643856189774724, abs=1e-9)


def test_bounds_degenerate_labeled_zero_exit():
    out = run_cli("bounds", "--attributes", "50", "--objects", "50",
                  "--p", "0.99").stdout.decode()
    assert "degenerate-dense" in out


def test_bounds_p_out_of_range_usage_error():
    run_cli("bounds", "--attributes", "50", "--objects", "50", "--p", "1.0",
            expect_code=2)


def test_bounds_regime_row():
    out = run_cli("bounds", "--attributes", "100", "--objects", "30",
                  "--p", "0.5", "--u-size", "0", "--r-size", "100").stdout.decode()
    assert "regime = exponential" in out


def test_bounds_json_format():
    out = run_cli("bounds", "--attributes", "50", "--objects", "50",
                  "--p", "0.5", "--format", "json").stdout
    payload = json.loads(out)
    assert "avg_pp_exponent" in payload


def test_sweep_csv_deterministic(tmp_path):
    args = ("sweep", "--model", "single", "--objects", "5,8", "--attributes",
            "5", "--p", "0.5", "--trials", "2", "--seed", "42")
    a = run_cli(*args).stdout
    b = run_cli(*args).stdout
    assert a == b
    c = run_cli(*args, "--workers", "3").stdout
    assert a == c


def test_sweep_error_rows_nonzero_exit():
    proc = run_cli("sweep", "--model", "single", "--objects", "5",
                   "--attributes", "5,30", "--p", "0.5", "--trials", "1",
                   "--seed", "1", "--max-proper-attrs", "10", expect_code=1)
    assert b"guard" in proc.stdout


def test_sweep_json_format():
    out = run_cli("sweep", "--model", "single", "--objects", "5",
                  "--attributes", "5", "--p", "0.5", "--trials", "1",
                  "--seed", "2", "--format", "json").stdout
    payload = json.loads(out)
    assert payload[0]["mt_mean"] is not None


def test_fit_end_to_end(tmp_path):
    csv_path = tmp_path / "sweep.csv"
    run_cli("sweep", "--model", "single", "--objects", "10,14,18",
            "--attributes", "10,14,18", "--p", "0.5", "--trials", "2",
            "--seed", "5", "--out", str(csv_path))
    out = run_cli("fit", str(csv_path)).stdout.decode()
    assert out.startswith("c = ")
    assert "c2 = " in out and "max_relative_residual" in out


def test_fit_singular_reported(tmp_path):
    csv_path = tmp_path / "one_cell.csv"
    run_cli("sweep", "--model", "single", "--objects", "6", "--attributes", "6",
            "--p", "0.5", "--trials", "3", "--seed", "5", "--out", str(csv_path))
    proc = run_cli("fit", str(csv_path), expect_code=1)
    assert b"singular" in proc.stderr


def test_usage_error_on_unknown_command():
    run_cli("frobnicate", expect_code=2)
