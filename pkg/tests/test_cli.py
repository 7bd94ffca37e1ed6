import json
import subprocess
import sys

import jsonschema
import pytest

from lievariety import cli
from lievariety.checks import THETA_DISPLAYED
from lievariety.lie4 import STRUCT
from lievariety.poly import parse

FIXTURES = cli.packaged_fixtures()


def run(*args, check_code=None):
    proc = subprocess.run([sys.executable, "-m", "lievariety.cli", *args, "-q"],
                          capture_output=True, text=True, timeout=900)
    if check_code is not None:
        assert proc.returncode == check_code, proc.stderr
    return proc


def _outputs(path):
    report = json.loads(path.read_text())
    report["outputs"].pop("elapsed_seconds")
    return report


def test_quadrics(tmp_path):
    proc = run("quadrics", "--check-grading", "--fixtures", str(tmp_path), check_code=0)
    lines = proc.stdout.splitlines()
    assert len(lines) == 16
    # same polynomial as the display; the text follows the row-major variable order
    assert parse(lines[0], STRUCT) == parse(THETA_DISPLAYED[(1, 1)], STRUCT)
    assert lines[0] + "\n" == (FIXTURES / "theta" / "theta_11.txt").read_text()
    for path in (tmp_path / "theta").iterdir():
        assert path.read_bytes() == (FIXTURES / "theta" / path.name).read_bytes()
    report = json.loads((tmp_path / "reports" / "quadrics.json").read_text())
    jsonschema.validate(report, cli.load_schema())
    assert report["status"] == "ok" and report["outputs"]["counts"] == {"quadrics": 16}


def test_component_hilbert(tmp_path):
    out = tmp_path / "c1.json"
    proc = run("component", "1", "--hilbert", "--json", str(out), check_code=0)
    assert "dim 11, degree 55" in proc.stdout
    report = json.loads(out.read_text())
    jsonschema.validate(report, cli.load_schema())
    assert report["outputs"]["counts"] == {"1": 4, "2": 10, "3": 20}
    assert (report["outputs"]["dim"], report["outputs"]["degree"]) == (11, 55)


def test_component_profile_and_fixtures(tmp_path):
    out = tmp_path / "c3.json"
    run("component", "3", "--json", str(out), "--fixtures", str(tmp_path), check_code=0)
    assert json.loads(out.read_text())["outputs"]["counts"] == {"1": 0, "2": 26, "3": 40}
    for d in (1, 2, 3):
        rel = f"components/C3/gens_deg{d}.txt"
        assert (tmp_path / rel).read_bytes() == (FIXTURES / rel).read_bytes()


def test_component_is_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run("component", "2", "--seed", "1", "--json", str(a), check_code=0)
    run("component", "2", "--seed", "1", "--json", str(b), check_code=0)
    assert _outputs(a) == _outputs(b)
    assert _outputs(a)["outputs"]["counts"] == {"1": 0, "2": 16, "3": 44}


def test_budget_exceeded(tmp_path):
    out = tmp_path / "c4.json"
    proc = run("component", "4", "--hilbert", "--budget", "0.2", "--json", str(out), check_code=2)
    assert "budget exceeded" in proc.stderr
    report = json.loads(out.read_text())
    jsonschema.validate(report, cli.load_schema())
    assert report["status"] == "budget_exceeded"


@pytest.mark.parametrize("args", [
    ["component", "7"],
    ["component", "1", "--max-degree", "9"],
    ["component", "1", "--budget", "-1"],
    ["component", "one"],
    ["frobnicate"],
    ["fixtures"],
])
def test_bad_arguments(args):
    assert run(*args).returncode == 3


def test_packaged_fixtures_are_current():
    for rel, text in {**cli.theta_fixtures(), **cli.named_fixtures()}.items():
        assert (FIXTURES / rel).read_text() == text, rel
    layout = {p.relative_to(FIXTURES).parts[0] for p in FIXTURES.rglob("*") if p.is_file()}
    assert layout == {"theta", "components", "reports", "named"}


def test_packaged_reports_validate():
    reports = sorted((FIXTURES / "reports").glob("*.json"))
    assert reports
    schema = cli.load_schema()
    for path in reports:
        jsonschema.validate(json.loads(path.read_text()), schema)


def test_schema_rejects_bad_reports():
    with pytest.raises(jsonschema.ValidationError):
        cli.make_report("component", {"seed": 0, "component": 5, "degree": 3, "budget": None},
                        {"elapsed_seconds": 1.0}, "ok")
    with pytest.raises(jsonschema.ValidationError):
        cli.make_report("quadrics", {"seed": 0, "component": None, "degree": None, "budget": None},
                        {}, "ok")
