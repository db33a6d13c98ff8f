"""Command-line interface tests: exit codes, output formats, file output
and determinism."""

import json

import pytest

from spikedho.cli import build_parser, main


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr().out
    return code, out


def test_coeffs_csv(capsys):
    code, out = run(["coeffs", "--A", "12"], capsys)
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("A,alpha,gamma,E0,eps1")
    fields = lines[1].split(",")
    assert float(fields[3]) == 9.0            # E0
    assert abs(float(fields[4]) - 4.0 / 35.0) < 1e-12


def test_l_option_equals_A(capsys):
    _, out_l = run(["coeffs", "--l", "3"], capsys)
    _, out_a = run(["coeffs", "--A", "12"], capsys)
    assert out_l == out_a


def test_bounds_json_roundtrip(tmp_path, capsys):
    out_file = tmp_path / "bounds.json"
    code = main(["bounds", "--A", "12", "--lambda", "0.001",
                 "--format", "json", "--out", str(out_file)])
    assert code == 0
    doc = json.loads(out_file.read_text())
    assert doc["command"] == "bounds"
    assert doc["summary"]["failures"] == 0
    row = doc["rows"][0]
    assert row["lower_p1"] < row["upper_p1"]
    assert row["optimal_valid"] is True


def test_output_is_deterministic(tmp_path):
    f1, f2 = tmp_path / "a.json", tmp_path / "b.json"
    for f in (f1, f2):
        assert main(["bounds", "--A", "12", "--lambda", "0.01",
                     "--format", "json", "--out", str(f)]) == 0
    assert f1.read_bytes() == f2.read_bytes()


def test_markdown_format(capsys):
    code, out = run(["bounds", "--A", "12", "--lambda", "0.1",
                     "--format", "md"], capsys)
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("| lambda |")
    assert set(lines[1]) <= {"|", "-"}


def test_solve_command(capsys):
    code, out = run(["solve", "--l", "3", "--lambda", "0.001"], capsys)
    assert code == 0
    row = out.strip().splitlines()[1].split(",")
    assert abs(float(row[2]) - 9.00011427912) < 1e-9
    assert row[4] == "True"


def test_multiple_lambdas(capsys):
    code, out = run(["solve", "--l", "3", "--lambda", "0.001",
                     "--lambda", "0.01"], capsys)
    assert code == 0
    assert len(out.strip().splitlines()) == 3


def test_usage_error_exit_code(capsys):
    assert main(["no-such-command"]) == 2
    assert main([]) == 2
    assert main(["coeffs", "--A", "12", "--l", "3"]) == 2  # mutually exclusive


def test_domain_error_exit_code(capsys):
    assert main(["coeffs", "--A", "-1"]) == 2
    assert main(["bounds", "--A", "12", "--lambda", "-0.5"]) == 2
    assert main(["coeffs", "--A", "0"]) == 2   # 2*gamma <= alpha


def test_parser_defaults():
    args = build_parser().parse_args(["bounds"])
    assert args.alpha == 4.0
    assert args.tol == 1e-11
    assert args.fmt == "csv"
    assert args.lam is None


def test_sums_command(capsys):
    code, out = run(["sums", "--format", "json", "--A", "12"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["summary"]["failures"] == 0
    names = {r["identity"] for r in doc["rows"]}
    assert names == {"double_sum", "resummation", "resummation_limit",
                     "trigamma_series"}
