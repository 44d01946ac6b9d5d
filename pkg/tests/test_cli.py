import csv
import io
import json
import subprocess
import sys

import pytest

from frobthick.cli import SWEEP_COLUMNS, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def _strip_timing(report):
    report = dict(report)
    report.pop("elapsed_ms", None)
    return report


def test_minimal_t_cusp(capsys):
    code, out, _ = run(capsys, "minimal-t", "--n", "2", "--p", "7", "--poly", "x0^3-x1^2*x2")
    assert code == 0
    assert json.loads(out)["result"]["t_min"] == 2


def test_verify_cusp_formula(capsys):
    code, out, _ = run(capsys, "verify", "cusp-formula", "--p", "5,7,11,13")
    assert code == 0
    assert out.startswith("cusp-formula: PASS")


def test_analyze_supersingular_cubic(capsys):
    code, out, _ = run(capsys, "analyze", "--n", "2", "--p", "5", "--poly", "x0^3+x1^3+x2^3", "--t", "1")
    assert code == 0
    assert json.loads(out)["result"]["injective"] is False


def test_json_round_trips_byte_identically(capsys):
    _, out, _ = run(capsys, "analyze", "--n", "2", "--p", "5,7", "--poly", "x0^3+x1^3+x2^3", "--t", "1-3")
    lines = out.splitlines()
    assert len(lines) == 6
    for line in lines:
        assert json.dumps(json.loads(line)) == line


def test_parallel_grid_is_deterministic(capsys):
    argv = ["analyze", "--n", "2", "--p", "5,7,11", "--poly", "x0^3-x1^2*x2", "--t", "1-5"]
    _, serial, _ = run(capsys, *argv)
    _, parallel, _ = run(capsys, *argv, "--threads", "3")
    a = [_strip_timing(json.loads(x)) for x in serial.splitlines()]
    b = [_strip_timing(json.loads(x)) for x in parallel.splitlines()]
    assert a == b


def test_sweep_csv(capsys):
    code, out, _ = run(capsys, "sweep", "--n", "2", "--p-list", "5,7", "--family", "fermat", "--degree", "3")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == SWEEP_COLUMNS
    assert len(rows) == 1 + 5 + 7
    assert rows[1][:6] == ["5", "1", "0", "1", "0", "false"]
    assert all(r[5] == "true" for r in rows[2:])


def test_fpt_and_smooth(capsys):
    code, out, _ = run(capsys, "fpt", "--n", "2", "--p", "5", "--poly", "x0^3+x1^3+x2^3")
    assert code == 0
    assert json.loads(out)["result"] == {"nu": 3, "fpt_estimate": "3/5"}
    code, out, _ = run(
        capsys, "smooth", "--n", "3", "--p", "7", "--ideal", "x0^2+x1^2+x2^2+x3^2,x0^2+2*x1^2+3*x2^2+4*x3^2"
    )
    res = json.loads(out)["result"]
    assert code == 0 and res["smooth"] and res["regular_sequence_probe"]
    _, out, _ = run(capsys, "smooth", "--n", "2", "--p", "7", "--poly", "x0^3-x1^2*x2")
    assert json.loads(out)["result"]["smooth"] is False


def test_variety_file_and_out(tmp_path, capsys):
    data = tmp_path / "v.json"
    data.write_text(json.dumps({"n": 2, "p": [5, 7], "generators": ["x0^3 + x1^3 + x2^3"]}))
    target = tmp_path / "out.txt"
    code, out, _ = run(capsys, "minimal-t", "--variety", str(data), "--format", "text", "--out", str(target))
    assert code == 0 and out == ""
    lines = target.read_text().splitlines()
    assert [line.rsplit("=", 1)[1] for line in lines] == ["2", "1"]


@pytest.mark.parametrize(
    "argv, code",
    [
        (["analyze", "--n", "2", "--p", "5", "--poly", "x0^3+x1^^3", "--t", "1"], 2),
        (["analyze", "--n", "2", "--p", "5", "--poly", "x0^3+x1^2", "--t", "1"], 2),
        (["analyze", "--n", "2", "--p", "4", "--poly", "x0^3", "--t", "1"], 2),
        (["analyze", "--n", "2", "--p", "5", "--poly", "x0^3", "--t", "6"], 2),
        (["analyze", "--p", "5", "--poly", "x0^3", "--t", "1"], 2),
        (["analyze", "--n", "3", "--p", "47", "--poly", "x0^6+x1^6+x2^6+x3^6", "--t", "1", "--twist", "5"], 3),
        (["verify", "cusp-formula", "--p", "53"], 3),
    ],
)
def test_exit_codes(capsys, argv, code):
    got, out, err = run(capsys, *argv)
    assert got == code
    assert out == ""
    assert err.startswith("frobthick:")


def test_parse_error_reports_position(capsys):
    _, _, err = run(capsys, "analyze", "--n", "2", "--p", "5", "--poly", "x0^3+x1^^3", "--t", "1")
    assert "position 8" in err


def test_force_overrides_guardrail(capsys):
    code, out, _ = run(
        capsys, "analyze", "--n", "2", "--p", "5", "--poly", "x0^3+x1^3+x2^3", "--t", "1", "--guardrail", "3"
    )
    assert code == 3
    code, out, _ = run(
        capsys, "analyze", "--n", "2", "--p", "5", "--poly", "x0^3+x1^3+x2^3", "--t", "1", "--guardrail", "3",
        "--force",
    )
    assert code == 0


def test_console_script():
    out = subprocess.run(
        [sys.executable, "-m", "frobthick.cli", "minimal-t", "--n", "2", "--p", "7", "--poly", "x0^3-x1^2*x2",
         "--format", "text"],
        capture_output=True,
        text=True,
    )
    assert out.returncode == 0
    assert out.stdout.strip().endswith("t_min=2")
