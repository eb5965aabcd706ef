"""
CSV and JSON result artifacts.

CSV rows share one fixed header; floats are written with repr so a re-run
with the same RunConfig reproduces the file byte for byte.
"""

import csv
from pathlib import Path
from typing import Any, Dict, Iterable, List, Mapping, Optional

import orjson
import structlog
from pydantic import BaseModel

from seglat.core.exceptions import SerializationError
from seglat.lattice.geometry import Boundary
from seglat.models.coloring import ModelTag
from seglat.montecarlo.models import EstimateWithCI, SweepResult

logger = structlog.get_logger(__name__)

CSV_FIELDS = [
    "model",
    "d",
    "L",
    "boundary",
    "p",
    "lambda",
    "replicates",
    "metric",
    "mean",
    "stderr",
    "master_seed",
]

Row = Dict[str, Any]


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, (ModelTag, Boundary)):
        return value.value
    return str(value)


def estimate_row(
    model: ModelTag,
    d: int,
    L: Optional[int],
    p: float,
    lam: Optional[float],
    metric: str,
    estimate: EstimateWithCI,
    boundary: Boundary = Boundary.TORUS,
) -> Row:
    return {
        "model": model,
        "d": d,
        "L": L,
        "boundary": boundary,
        "p": p,
        "lambda": lam,
        "replicates": estimate.replicates,
        "metric": metric,
        "mean": estimate.mean,
        "stderr": estimate.stderr,
        "master_seed": estimate.master_seed,
    }


def sweep_rows(result: SweepResult) -> List[Row]:
    """Two rows per grid point: wrap_prob and largest_fraction."""
    rows = []
    for row in result.rows:
        for metric in ("wrap_prob", "largest_fraction"):
            rows.append(
                estimate_row(row.model, row.d, row.L, row.p, row.lam, metric, getattr(row, metric), row.boundary)
            )
    return rows


def write_csv(rows: Iterable[Mapping[str, Any]], path: Path) -> int:
    """Write rows under CSV_FIELDS; returns the number of rows written."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    count = 0
    with path.open("w", encoding="utf-8", newline="") as f:
        writer = csv.DictWriter(f, fieldnames=CSV_FIELDS, extrasaction="ignore", lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({field: _cell(row.get(field)) for field in CSV_FIELDS})
            count += 1
    logger.debug("CSV written", path=str(path), rows=count)
    return count


def _strip_values(data: Any) -> Any:
    if isinstance(data, dict):
        return {key: _strip_values(value) for key, value in data.items() if key != "per_replicate_values"}
    if isinstance(data, list):
        return [_strip_values(item) for item in data]
    return data


def to_document(result: BaseModel | List[Row], full: bool = False) -> Any:
    """JSON-ready form of a result; per-replicate arrays only when `full`."""
    if isinstance(result, BaseModel):
        data = result.model_dump(mode="json")
    else:
        data = {"rows": [{field: row.get(field) for field in CSV_FIELDS} for row in result]}
    return data if full else _strip_values(data)


def write_json(result: BaseModel | List[Row], path: Path, full: bool = False) -> None:
    path = Path(path)
    try:
        payload = orjson.dumps(
            to_document(result, full),
            option=orjson.OPT_INDENT_2 | orjson.OPT_SORT_KEYS | orjson.OPT_NON_STR_KEYS,
        )
    except TypeError as e:
        raise SerializationError("Result is not JSON serialisable", artifact=type(result).__name__, original_error=e) from e
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(payload)
    logger.debug("JSON written", path=str(path), full=full)
