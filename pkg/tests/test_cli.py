import json
import subprocess
import sys

import pytest

from diffchow import parse, parse_ring
from diffchow.chowform import chow_ring
from diffchow.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    return code, json.loads(out)


def test_documented_examples(capsys):
    code, out, _ = run(capsys, "dimpoly", "--ring", "Y=2 field=Q", "--charset", "y0*y1' - y1*y0'")
    assert code == 0
    assert out.strip() == '{"a1":1,"a0":1,"dim":0,"order":1,"form":"projective"}'
    code, out, _ = run(capsys, "rv", "--variety", "span (1 0 0) (0 1 0)", "--n", "2")
    assert out.strip() == '{"rv":"y0*y1\' - y1*y0\'"}'
    code, out, _ = run(capsys, "homog-check", "--ring", "Y=2 field=Q", "y0'")
    assert out.strip() == '{"homogeneous":false,"witness":"t\'*y0"}'


def test_reduce_and_charset(capsys):
    code, data = run_json(capsys, "reduce", "--ring", "Y=2", "--ranking", "elimination",
                          "y1''", "--by", "y0*y1' - y1*y0'")
    assert code == 0
    assert data == {"remainder": "y1*y0''", "multiplier": "y0", "exponents": {"S0": 1}}
    code, data = run_json(capsys, "charset", "--ring", "Y=3", "y2", "y0*y2' - y2*y0'",
                          "y0*y1' - y1*y0'")
    assert data["charset"] == ["y2", "y0*y1' - y1*y0'"]


def test_bridge_commands(capsys):
    _, data = run_json(capsys, "homogenize", "--ring", "Y=2", "y1'*y1")
    assert data == {"polynomial": "y0*y1*y1' - y1^2*y0'", "denomination": 3}
    _, data = run_json(capsys, "dehomogenize", "--ring", "Y=3",
                       "--charset", "y2; y0*y1' - y1*y0'")
    assert sorted(data["charset"]) == ["y1'", "y2"]
    _, data = run_json(capsys, "vdelta", "--ring", "Y=3", "y2")
    assert len(data["generators"]) == 4


def test_intersect_and_chow(capsys):
    _, data = run_json(capsys, "intersect", "--ring", "Y=4", "--charset", "y3", "--charset", "y2")
    assert (data["dim_after"], data["order_after"]) == (0, 0)
    _, data = run_json(capsys, "chow", "--delta", "--variety", "span (1 0 0) (0 1 0)")
    assert (data["order"], data["g"]) == (1, 1)
    _, data = run_json(capsys, "verify54", "--variety", "point 1 2 3")
    assert data == {"equal": True}


def test_lindep_and_witness(capsys):
    _, data = run_json(capsys, "lindep", "--variety", "span (1 0) (0 1)", "--point", "x, x^2")
    assert data["verdict"] == "independent" and data["value"] == "x^2 + O(x^15)"
    _, data = run_json(capsys, "witness", "--variety", "span (1 0 0) (0 1 0)",
                       "--point", "2*x, 3*x, 5")
    assert data["witness"] == ["1 + O(x^15)", "-2/3 + O(x^15)", "0 + O(x^15)"]


def test_file_input_with_comments(capsys, tmp_path):
    f = tmp_path / "cs.txt"
    f.write_text("# the line y2 = 0 as a differential variety\ny2\n\ny0*y1' - y1*y0'  # minor\n",
                 encoding="utf-8")
    _, data = run_json(capsys, "dimpoly", "--ring", "Y=3", "--charset", f"@{f}")
    assert (data["dim"], data["order"]) == (0, 1)


def test_exit_codes(capsys, tmp_path):
    code, data = run_json(capsys, "charset", "--ring", "Y=1", "y0", "1")
    assert code == 1 and data["error"] == "unit_ideal"
    code, data = run_json(capsys, "dimpoly", "--ring", "Y=2", "--charset", "y5")
    assert code == 1 and data["error"] == "unknown_variable"
    code, data = run_json(capsys, "dimpoly", "--ring", "Y=2", "--charset", f"@{tmp_path}/none")
    assert code == 1 and data["error"] == "file_not_found"
    code, data = run_json(capsys, "homogenize", "--ring", "Y=2", "y1 +")
    assert code == 1 and data["error"] == "parse_error"
    code, _, err = run(capsys, "dimpoly", "--charset", "y2")
    assert code == 2 and "--ring" in err
    code, _, _ = run(capsys, "frobnicate")
    assert code == 2
    code, _, _ = run(capsys, "rv", "--variety", "point 1 2 3", "--n", "5")
    assert code == 2


def test_distinct_error_codes_are_machine_readable(capsys):
    codes = set()
    for argv in (["charset", "--ring", "Y=1", "y0", "1"],
                 ["dimpoly", "--ring", "Y=2", "--charset", "y5"],
                 ["homogenize", "--ring", "Y=2", "y1 +"],
                 ["lindep", "--variety", "span (1 0) (0 1)", "--point", "1/x, 1"]):
        code, data = run_json(capsys, *argv)
        assert code == 1
        codes.add(data["error"])
    assert len(codes) == 4


def test_polynomial_outputs_parse_back(capsys):
    ring = parse_ring("Y=3")
    u_ring = chow_ring(2, 0)
    _, data = run_json(capsys, "homogenize", "--ring", "Y=3", "y2'' - y1")
    assert parse(data["polynomial"], ring).render() == data["polynomial"]
    _, data = run_json(capsys, "chow", "--delta", "--variety", "param 1, s, s^2 where y0*y2 - y1^2")
    assert parse(data["form"], u_ring).render() == data["form"]
    assert parse(data["separant"], u_ring).render() == data["separant"]


def test_pretty_output(capsys):
    code, out, _ = run(capsys, "lindep", "--pretty", "--variety", "span (1 0) (0 1)",
                       "--point", "2*x, 3*x")
    assert code == 0
    assert "verdict: dependent" in out and "  -2/3 + O(x^15)" in out


def test_console_entry_is_deterministic():
    argv = [sys.executable, "-m", "diffchow", "chow", "--variety", "param 1, s, s^2"]
    first = subprocess.run(argv, capture_output=True, check=True).stdout
    second = subprocess.run(argv, capture_output=True, check=True).stdout
    assert first == second and first.endswith(b"}\n")
