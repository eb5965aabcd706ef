"""
End-to-end command runs: sample, render, sweep and the acceptance checks.
"""

import csv

import orjson
import pytest
from typer.testing import CliRunner

from seglat.cli import app

pytestmark = pytest.mark.integration


@pytest.fixture
def cli():
    return CliRunner()


def test_sample_then_render(cli, tmp_path):
    """Test sample then render."""
    sample = ["sample", "--model", "mixed", "--p", "0.8", "--lambda", "0.6", "--L", "16",
              "--boundary", "free", "--seed", "2", "--out-dir", str(tmp_path)]
    assert cli.invoke(app, sample).exit_code == 0

    out = tmp_path / "picture.svg"
    render = ["render", "--edges", str(tmp_path / "edges.json"), "--sites", str(tmp_path / "sites.json"),
              "--out", str(out), "--highlight-left", "--omit-plain"]
    result = cli.invoke(app, render)
    assert result.exit_code == 0, result.output
    assert out.read_text(encoding="utf-8").rstrip().endswith("</svg>")


def test_sweep_grid(cli, tmp_path):
    """Test sweep rows in grid order."""
    path = tmp_path / "sweep.csv"
    args = ["sweep", "--p-grid", "0.6,1.0", "--lambda-grid", "0.2,0.9", "--L", "12",
            "--replicates", "4", "--seed", "5", "--csv", str(path)]
    result = cli.invoke(app, args)
    assert result.exit_code == 0, result.output

    with path.open(newline="", encoding="utf-8") as handle:
        rows = list(csv.DictReader(handle))
    wraps = [(row["p"], row["lambda"]) for row in rows if row["metric"] == "wrap_prob"]
    assert wraps == [("0.6", "0.2"), ("0.6", "0.9"), ("1.0", "0.2"), ("1.0", "0.9")]


@pytest.mark.slow
@pytest.mark.statistical
def test_quick_verify_passes(cli, tmp_path):
    """Test quick verify passes."""
    report = tmp_path / "verify.json"
    result = cli.invoke(app, ["verify", "--quick", "--seed", "1", "--json", str(report)])
    assert result.exit_code == 0, result.output

    checks = orjson.loads(report.read_bytes())["checks"]
    assert {check["group"] for check in checks} == {"formulas", "compass", "coupling", "blocks", "regions", "clusters"}
