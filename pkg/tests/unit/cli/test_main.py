"""
Unit tests for the seglat command line.
"""

import orjson
import pytest
import yaml
from typer.testing import CliRunner

from seglat.cli import app
from seglat.lattice import site_config_from_json
from seglat.models import ModelTag, blue_edge_set_from_json

pytestmark = pytest.mark.unit


@pytest.fixture
def runner():
    return CliRunner()


class TestAnalytic:
    @pytest.mark.parametrize(
        ("args", "expected"),
        [
            (["--formula", "lambda-one-choice", "--d", "2"], "7/16"),
            (["--formula", "vertex-one-choice", "--p", "1/2"], "431/512"),
            (["--formula", "branching", "--p", "0.6", "--lambda", "0.1"], "1/2 1/3 true"),
            (["--formula", "collinear-corr", "--p", "0.5", "--k", "3"], "1/8"),
            (["--formula", "compass-radius", "--p", "1"], "0.75"),
            (["--formula", "block-r", "--q", "0.5"], "1"),
            (["--formula", "block-a", "--q", "0.5", "--lambda", "7/16"], "0.013671875"),
            (["--formula", "region", "--p", "0.5", "--lambda", "0.3"], "Unknown"),
            (["--formula", "region", "--p", "0.5", "--lambda", "0.45"], "Unknown"),
            (["--formula", "region", "--p", "0.5", "--lambda", "0.45", "--mixed-curve", "0.4"], "Percolates_B"),
            (["--formula", "region", "--p", "0.5", "--lambda", "0.3", "--mixed-curve", "0.4"], "Unknown"),
        ],
    )
    def test_values(self, runner, args, expected):
        """Test closed-form values printed by analytic."""
        result = runner.invoke(app, ["analytic", *args])
        assert result.exit_code == 0, result.output
        assert result.stdout.strip() == expected

    def test_missing_formula(self, runner):
        """Test that analytic needs --formula."""
        assert runner.invoke(app, ["analytic"]).exit_code == 2

    def test_missing_lambda(self, runner):
        """Test that a missing lambda names the flag."""
        result = runner.invoke(app, ["analytic", "--formula", "vertex-independent", "--p", "0.5"])
        assert result.exit_code == 2
        assert "--lambda" in result.output

    def test_bad_number(self, runner):
        """Test that a malformed number is a usage error."""
        assert runner.invoke(app, ["analytic", "--formula", "vertex-one-choice", "--p", "half"]).exit_code == 2

    def test_block_c_needs_multiple_of_three(self, runner):
        """Test block c needs multiple of three."""
        args = ["analytic", "--formula", "block-c", "--q", "0.5", "--lambda", "1", "--r", "2"]
        assert runner.invoke(app, args).exit_code == 2


class TestSampleAndRender:
    def test_sample_writes_artifacts(self, runner, tmp_path):
        """Test sample writes artifacts."""
        args = ["sample", "--model", "independent", "--p", "0.7", "--lambda", "0.5", "--L", "12",
                "--boundary", "free", "--seed", "3", "--out-dir", str(tmp_path)]
        result = runner.invoke(app, args)
        assert result.exit_code == 0, result.output

        sites = site_config_from_json((tmp_path / "sites.json").read_bytes())
        edges = blue_edge_set_from_json((tmp_path / "edges.json").read_bytes())
        assert sites.geometry == edges.geometry
        assert edges.model_tag == ModelTag.INDEPENDENT
        assert edges.seeds["site_seed"] == sites.site_seed

    def test_sample_is_reproducible(self, runner, tmp_path):
        """Test sample is reproducible."""
        for name in ("a", "b"):
            args = ["sample", "--model", "one-choice", "--p", "0.6", "--L", "10", "--seed", "8",
                    "--out-dir", str(tmp_path / name)]
            assert runner.invoke(app, args).exit_code == 0
        assert (tmp_path / "a" / "edges.json").read_bytes() == (tmp_path / "b" / "edges.json").read_bytes()

    def test_render(self, runner, tmp_path):
        """Test rendering sampled artifacts."""
        sample_args = ["sample", "--model", "one-choice", "--p", "0.6", "--L", "10",
                       "--boundary", "free", "--out-dir", str(tmp_path)]
        assert runner.invoke(app, sample_args).exit_code == 0
        out = tmp_path / "sample.svg"
        result = runner.invoke(
            app,
            ["render", "--edges", str(tmp_path / "edges.json"), "--sites", str(tmp_path / "sites.json"),
             "--out", str(out), "--highlight-left"],
        )
        assert result.exit_code == 0, result.output
        assert out.read_text(encoding="utf-8").startswith("<svg")

    def test_render_torus_is_usage_error(self, runner, tmp_path):
        """Test render torus is usage error."""
        sample_args = ["sample", "--model", "one-choice", "--p", "0.6", "--L", "10", "--out-dir", str(tmp_path)]
        assert runner.invoke(app, sample_args).exit_code == 0
        result = runner.invoke(app, ["render", "--edges", str(tmp_path / "edges.json"), "--out", str(tmp_path / "x.svg")])
        assert result.exit_code == 2

    def test_render_missing_file(self, runner, tmp_path):
        """Test render missing file."""
        result = runner.invoke(app, ["render", "--edges", str(tmp_path / "none.json")])
        assert result.exit_code == 3

    def test_render_corrupt_file(self, runner, tmp_path):
        """Test render corrupt file."""
        path = tmp_path / "edges.json"
        path.write_text("{not json", encoding="utf-8")
        assert runner.invoke(app, ["render", "--edges", str(path)]).exit_code == 3


class TestEstimates:
    def test_estimate_csv(self, runner, tmp_path):
        """Test the CSV row written by estimate."""
        path = tmp_path / "edge.csv"
        args = ["estimate", "--model", "independent", "--p", "0.8", "--lambda", "0.3", "--L", "24",
                "--replicates", "4", "--seed", "1", "--csv", str(path)]
        result = runner.invoke(app, args)
        assert result.exit_code == 0, result.output
        header, row = path.read_text(encoding="utf-8").splitlines()
        assert row.startswith("independent,2,24,torus,0.8,0.3,4,edge_blue,")

    def test_distance_adds_correlation_row(self, runner, tmp_path):
        """Test distance adds correlation row."""
        path = tmp_path / "corr.csv"
        args = ["estimate", "--model", "independent", "--p", "0.8", "--lambda", "0.3", "--L", "24",
                "--event", "pair_collinear_distance", "--k", "2", "--replicates", "4", "--csv", str(path)]
        assert runner.invoke(app, args).exit_code == 0
        metrics = [line.split(",")[7] for line in path.read_text(encoding="utf-8").splitlines()[1:]]
        assert metrics == ["pair_collinear_distance(2)", "correlation(2)"]

    def test_estimate_needs_lambda(self, runner):
        """Test estimate needs lambda."""
        args = ["estimate", "--model", "independent", "--p", "0.8", "--L", "24", "--replicates", "4"]
        assert runner.invoke(app, args).exit_code == 2

    def test_wrap_json(self, runner, tmp_path):
        """Test the JSON written by wrap."""
        path = tmp_path / "wrap.json"
        args = ["wrap", "--model", "independent", "--p", "1", "--lambda", "1", "--L", "8",
                "--replicates", "3", "--json", str(path)]
        result = runner.invoke(app, args)
        assert result.exit_code == 0, result.output
        assert orjson.loads(path.read_bytes())["mean"] == 1.0

    def test_critical_bracket_needs_two_values(self, runner):
        """Test critical bracket needs two values."""
        args = ["critical", "--model", "one-choice", "--bracket", "0.4,0.5,0.6", "--L", "8"]
        assert runner.invoke(app, args).exit_code == 2

    def test_mixed_curve_pinned_points(self, runner, tmp_path):
        """Test mixed curve pinned points."""
        path = tmp_path / "curve.csv"
        args = ["mixed-curve", "--p-grid", "0.3,0.5", "--L", "8", "--replicates", "2", "--csv", str(path)]
        result = runner.invoke(app, args)
        assert result.exit_code == 0, result.output
        rows = path.read_text(encoding="utf-8").splitlines()[1:]
        assert [row.split(",")[7] for row in rows] == ["lambda_c", "lambda_c"]


class TestThreads:
    @pytest.mark.parametrize(
        ("command", "extra"),
        [
            ("estimate", ["--lambda", "0.3", "--L", "24"]),
            ("wrap", ["--lambda", "0.6", "--L", "12"]),
        ],
    )
    def test_outputs_do_not_depend_on_threads(self, runner, tmp_path, command, extra):
        """Test that one and two workers write byte-identical CSV files."""
        outputs = []
        for threads in (1, 2):
            path = tmp_path / f"{command}-{threads}.csv"
            args = ["--threads", str(threads), command, "--model", "independent", "--p", "0.8", *extra,
                    "--replicates", "6", "--seed", "7", "--csv", str(path)]
            result = runner.invoke(app, args)
            assert result.exit_code == 0, result.output
            outputs.append(path.read_bytes())
        assert outputs[0] == outputs[1]


class TestVerify:
    def test_compass_group_passes(self, runner, tmp_path):
        """Test compass group passes."""
        report = tmp_path / "verify.json"
        result = runner.invoke(app, ["verify", "--only", "compass", "--quick", "--json", str(report)])
        assert result.exit_code == 0, result.output
        checks = orjson.loads(report.read_bytes())["checks"]
        assert checks and all(check["passed"] for check in checks)
        assert {check["group"] for check in checks} == {"compass"}

    def test_injected_fault_fails(self, runner):
        """Test injected fault fails."""
        result = runner.invoke(app, ["verify", "--only", "compass", "--quick", "--inject-fault", "coupling"])
        assert result.exit_code == 1

    def test_unknown_group(self, runner):
        """Test that an unknown group is a usage error."""
        assert runner.invoke(app, ["verify", "--only", "everything"]).exit_code == 2


class TestRunConfig:
    def test_save_and_replay(self, runner, tmp_path):
        """Test save and replay."""
        saved = tmp_path / "run.yaml"
        args = ["--save-config", str(saved), "analytic", "--formula", "vertex-one-choice", "--p", "1/2"]
        assert runner.invoke(app, args).exit_code == 0

        data = yaml.safe_load(saved.read_text(encoding="utf-8"))
        assert data["command"] == "analytic"
        assert data["options"]["formula"] == "vertex-one-choice"

        replay = runner.invoke(app, ["--config", str(saved), "analytic"])
        assert replay.exit_code == 0, replay.output
        assert replay.stdout.strip() == "431/512"

    def test_command_line_overrides_config(self, runner, tmp_path):
        """Test command line overrides config."""
        saved = tmp_path / "run.yaml"
        runner.invoke(app, ["--save-config", str(saved), "analytic", "--formula", "lambda-one-choice"])
        result = runner.invoke(app, ["--config", str(saved), "analytic", "--d", "3"])
        assert result.stdout.strip() == "11/36"

    def test_config_for_other_command(self, runner, tmp_path):
        """Test config for other command."""
        saved = tmp_path / "run.yaml"
        runner.invoke(app, ["--save-config", str(saved), "analytic", "--formula", "lambda-one-choice"])
        assert runner.invoke(app, ["--config", str(saved), "sweep"]).exit_code == 2

    def test_missing_config(self, runner, tmp_path):
        """Test that a missing run config is a file error."""
        assert runner.invoke(app, ["--config", str(tmp_path / "none.yaml"), "analytic"]).exit_code == 2
