"""
CLI tests
종료 코드, 텍스트/JSON/CSV 리포트, JSON 스키마 검증, 시드 결정성
"""
import contextlib
import io
import json
import sys
from pathlib import Path

# Add parent directory to path
sys.path.insert(0, str(Path(__file__).parent.parent))

import jsonschema
import pytest

from app.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, main

SCHEMA_PATH = Path(__file__).parent.parent / "schema" / "report.schema.json"


@pytest.fixture(scope="module")
def schema():
    with open(SCHEMA_PATH, "r", encoding="utf-8") as f:
        return json.load(f)


def run_cli(*argv):
    """main(argv) with stdout / stderr captured"""
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = main(list(argv))
    return code, out.getvalue(), err.getvalue()


def run_json(*argv):
    code, out, err = run_cli(*argv, "--format", "json")
    return code, json.loads(out) if out else None, err


def test_weights_f4_first_line():
    code, out, _ = run_cli("weights", "--type", "F", "--rank", "4")
    assert code == EXIT_OK
    assert out.splitlines()[0] == "2 3 2 1 1"


def test_strata_a2_json(schema):
    code, report, _ = run_json("strata", "--type", "A", "--rank", "2")
    assert code == EXIT_OK
    jsonschema.validate(report, schema)
    assert report["command"] == "strata"
    assert report["group"] == "A2"
    assert report["status"] == "ok"
    assert [s["stratumDim"] for s in report["data"]["strata"]] == [0, 0, 0, 6, 6, 6, 10]


@pytest.mark.parametrize(
    "argv",
    [
        ("faces", "--type", "C", "--rank", "2"),
        ("weights", "--type", "G", "--rank", "2"),
        ("smooth", "--type", "A", "--rank", "3", "--face", "01"),
        ("zeta", "--type", "A", "--rank", "3"),
        ("symmetries", "--type", "D", "--rank", "4"),
        ("check-centralizer", "--type", "B", "--rank", "3"),
        ("check-integrality", "--type", "E", "--rank", "6"),
        ("su-embedding-check", "--n", "3"),
        ("moduli-dim", "--type", "A", "--rank", "1", "--g", "1", "--n", "1"),
        ("sample-rep", "--g", "1", "--n", "2", "--samples", "5"),
        ("verify-varpi", "--samples", "5"),
        ("verify-glue", "--samples", "3"),
        ("verify-numeric", "double", "--samples", "3"),
    ],
)
def test_json_reports_match_schema(argv, schema):
    code, report, err = run_json(*argv)
    assert code == EXIT_OK, err
    jsonschema.validate(report, schema)
    assert report["seed"] == 0


def test_faces_rationals_are_strings():
    _, report, _ = run_json("faces", "--type", "C", "--rank", "2")
    vertices = {v["vertexId"]: v for v in report["data"]["vertices"]}
    assert vertices[1]["coordinates"] == ["1/2", "0"]
    assert vertices[2]["isCentral"] is True


def test_moduli_dim_values():
    _, report, _ = run_json("moduli-dim", "--type", "A", "--rank", "1", "--g", "1", "--n", "1")
    assert report["data"]["dims"]["dim_M_Sigma"] == 6
    assert report["data"]["generic"] is True
    assert report["data"]["dkCrossValidation"]["passed"] is True

    _, report, _ = run_json("moduli-dim", "--type", "A", "--rank", "1", "--g", "0", "--n", "3", "--faces", "A,A,A")
    assert report["data"]["dims"]["dim_reduction_generic"] == 0


def test_csv_output():
    code, out, _ = run_cli("strata", "--type", "A", "--rank", "2", "--format", "csv")
    assert code == EXIT_OK
    lines = out.splitlines()
    assert lines[0].split(",")[:3] == ["face", "label", "dim"]
    assert len(lines) == 1 + 7


def test_text_and_csv_record_seed():
    _, text, _ = run_cli("verify-varpi", "--samples", "5", "--seed", "17")
    assert text.splitlines()[-1] == "seed: 17"

    _, out, _ = run_cli("strata", "--type", "A", "--rank", "2", "--format", "csv", "--seed", "17")
    lines = out.splitlines()
    assert lines[0].split(",")[-1] == "seed"
    assert all(line.split(",")[-1] == "17" for line in lines[1:])

    _, weights, _ = run_cli("weights", "--type", "G", "--rank", "2", "--seed", "3")
    assert weights.splitlines()[0] == "1 2 1"
    assert weights.splitlines()[-1] == "seed: 3"


def test_output_file(tmp_path):
    target = tmp_path / "zeta.json"
    code, out, _ = run_cli("zeta", "--type", "A", "--rank", "2", "--format", "json", "--output", str(target))
    assert code == EXIT_OK
    assert out == ""
    assert json.loads(target.read_text(encoding="utf-8"))["data"]["isHomomorphism"] is True


def test_verification_failure_exit_code():
    code, out, err = run_cli("verify-varpi", "--samples", "5", "--tol", "1e-30")
    assert code == EXIT_FAIL
    assert "FAIL" in out
    assert "[verify-varpi] FAIL" in err


@pytest.mark.parametrize(
    "argv",
    [
        (),
        ("strata",),
        ("strata", "--type", "H", "--rank", "2"),
        ("strata", "--type", "E", "--rank", "5"),
        ("verify-numeric", "torus"),
        ("smooth", "--type", "A", "--rank", "2", "--face", "w9"),
        ("moduli-dim", "--type", "A", "--rank", "1", "--g", "0", "--n", "3", "--faces", "A"),
        ("su-embedding-check", "--n", "1"),
        ("sample-rep", "--g", "0", "--n", "1"),
        ("verify-varpi", "--samples", "0"),
        ("no-such-command",),
    ],
)
def test_usage_errors(argv):
    code, _, _ = run_cli(*argv)
    assert code == EXIT_USAGE


def test_help_exits_zero():
    code, _, _ = run_cli("--help")
    assert code == EXIT_OK


def test_seeded_runs_are_identical():
    first = run_cli("verify-varpi", "--samples", "10", "--seed", "42", "--format", "json")
    second = run_cli("verify-varpi", "--samples", "10", "--seed", "42", "--format", "json")
    assert first[1] == second[1]
    assert json.loads(first[1])["seed"] == 42


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
