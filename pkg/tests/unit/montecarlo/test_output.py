"""
Unit tests for CSV and JSON result artifacts.
"""

import orjson
import pytest

from seglat.core.exceptions import SerializationError
from seglat.models import ModelTag
from seglat.montecarlo import (
    CSV_FIELDS,
    EstimateWithCI,
    SweepResult,
    SweepRow,
    estimate_row,
    sweep_rows,
    write_csv,
    write_json,
)

pytestmark = pytest.mark.unit


@pytest.fixture
def estimate():
    return EstimateWithCI.from_values([0.1, 0.2, 0.3], master_seed=7)


@pytest.fixture
def sweep(estimate):
    row = SweepRow(
        model=ModelTag.INDEPENDENT, d=2, L=16, p=0.8, lam=0.5, wrap_prob=estimate, largest_fraction=estimate
    )
    return SweepResult(rows=[row])


class TestCsv:
    def test_header_and_cells(self, tmp_path, estimate):
        """Test header and cells."""
        row = estimate_row(ModelTag.ONE_CHOICE, 2, 64, 0.5, None, "edge_blue", estimate)
        path = tmp_path / "out" / "estimate.csv"
        assert write_csv([row], path) == 1

        header, line = path.read_text(encoding="utf-8").splitlines()
        assert header.split(",") == CSV_FIELDS
        cells = dict(zip(CSV_FIELDS, line.split(",")))
        assert cells["model"] == "one-choice"
        assert cells["boundary"] == "torus"
        assert cells["lambda"] == ""
        assert cells["mean"] == repr(estimate.mean)
        assert cells["master_seed"] == "7"

    def test_sweep_has_two_metrics(self, sweep):
        """Test sweep has two metrics."""
        rows = sweep_rows(sweep)
        assert [row["metric"] for row in rows] == ["wrap_prob", "largest_fraction"]

    def test_rewrite_is_identical(self, tmp_path, sweep):
        """Test rewrite is identical."""
        first, second = tmp_path / "a.csv", tmp_path / "b.csv"
        write_csv(sweep_rows(sweep), first)
        write_csv(sweep_rows(sweep), second)
        assert first.read_bytes() == second.read_bytes()


class TestJson:
    def test_values_stripped_by_default(self, tmp_path, sweep):
        """Test values stripped by default."""
        path = tmp_path / "sweep.json"
        write_json(sweep, path)
        data = orjson.loads(path.read_bytes())
        assert "per_replicate_values" not in data["rows"][0]["wrap_prob"]
        assert data["rows"][0]["model"] == "independent"

    def test_full_keeps_values(self, tmp_path, sweep):
        """Test full keeps values."""
        path = tmp_path / "sweep.json"
        write_json(sweep, path, full=True)
        data = orjson.loads(path.read_bytes())
        assert data["rows"][0]["wrap_prob"]["per_replicate_values"] == [0.1, 0.2, 0.3]

    def test_row_lists(self, tmp_path, estimate):
        """Test JSON output of a list of rows."""
        path = tmp_path / "rows.json"
        write_json([estimate_row(ModelTag.MIXED, 2, 32, 0.7, 0.6, "edge_blue", estimate)], path)
        data = orjson.loads(path.read_bytes())
        assert data["rows"][0]["lambda"] == 0.6

    def test_unserialisable_row(self, tmp_path):
        """Test that an unserialisable row is a serialization error."""
        with pytest.raises(SerializationError):
            write_json([{"mean": object()}], tmp_path / "bad.json")
