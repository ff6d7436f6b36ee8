"""CSV ingestion, result serialization and run configuration.

Floats are written with ``repr`` (shortest round-trip form), never through
the locale, so every file reads back bit-exactly.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import InvalidData, ParseError, SizeError
from .inference import TestResult
from .power import Axis, PowerCurve
from .stats import get_statistic

FORMATS = ("json", "csv")
RESULT_FIELDS = ("statistic_name", "statistic", "p_value", "n_permutations", "seed", "scale")


def _parse_rows(lines, has_header: bool) -> tuple[np.ndarray, list[str] | None]:
    header = None
    rows = []
    width = None
    for lineno, fields in enumerate(csv.reader(lines), start=1):
        if not fields or all(not f.strip() for f in fields):
            continue
        if has_header and header is None:
            header = [f.strip() for f in fields]
            width = len(header)
            continue
        if width is None:
            width = len(fields)
        elif len(fields) != width:
            raise ParseError(
                f"row {lineno} has {len(fields)} fields, expected {width}", row=lineno
            )
        row = []
        for col, cell in enumerate(fields, start=1):
            try:
                value = float(cell)
            except ValueError:
                raise ParseError(
                    f"non-numeric cell {cell.strip()!r} at row {lineno}, column {col}",
                    row=lineno,
                    column=col,
                ) from None
            if not math.isfinite(value):
                raise ParseError(f"non-finite cell {cell.strip()!r} at row {lineno}, column {col}", row=lineno, column=col)
            row.append(value)
        rows.append(row)
    if not rows:
        raise ParseError("no data rows")
    return np.array(rows, dtype=np.float64), header


def parse_csv(text: str, has_header: bool = False) -> np.ndarray:
    return _parse_rows(io.StringIO(text), has_header)[0]


def read_csv(path, has_header: bool = False) -> np.ndarray:
    """Read a rectangular numeric CSV file into an ``(n, p)`` array."""
    with open(path, newline="", encoding="utf-8") as fh:
        return _parse_rows(fh, has_header)[0]


def format_matrix(values, header=None) -> str:
    values = np.atleast_2d(np.asarray(values, dtype=np.float64))
    out = io.StringIO()
    if header:
        out.write(",".join(header) + "\n")
    for row in values:
        out.write(",".join(repr(float(v)) for v in row) + "\n")
    return out.getvalue()


def write_csv(path, values, header=None) -> None:
    Path(path).write_text(format_matrix(values, header), encoding="utf-8")


@dataclass(frozen=True)
class Dataset:
    x: np.ndarray
    y: np.ndarray
    source: str = "simulated"
    column_names: tuple[list[str] | None, list[str] | None] = (None, None)


def load_dataset(x_path, y_path, has_header: bool = False) -> Dataset:
    with open(x_path, newline="", encoding="utf-8") as fh:
        x, x_names = _parse_rows(fh, has_header)
    with open(y_path, newline="", encoding="utf-8") as fh:
        y, y_names = _parse_rows(fh, has_header)
    if x.shape[0] != y.shape[0]:
        raise SizeError(f"x has {x.shape[0]} rows but y has {y.shape[0]}")
    return Dataset(x, y, f"{x_path},{y_path}", (x_names, y_names))


@dataclass(frozen=True)
class RunConfig:
    statistic_name: str
    n_permutations: int = 1000
    seed: int = 0
    alpha: float = 0.05
    output_format: str = "json"

    def __post_init__(self):
        get_statistic(self.statistic_name)
        if int(self.n_permutations) != self.n_permutations or self.n_permutations < 1:
            raise InvalidData(f"n_permutations must be a positive integer, got {self.n_permutations}")
        if int(self.seed) != self.seed or self.seed < 0:
            raise InvalidData(f"seed must be a non-negative integer, got {self.seed}")
        if not 0 < self.alpha < 1:
            raise InvalidData(f"alpha must be in (0, 1), got {self.alpha}")
        if self.output_format not in FORMATS:
            raise InvalidData(f"format must be one of {FORMATS}, got {self.output_format!r}")


def _result_dict(result: TestResult) -> dict:
    return {
        "statistic_name": result.statistic_name,
        "statistic": float(result.statistic),
        "p_value": float(result.p_value),
        "n_permutations": int(result.n_permutations),
        "seed": int(result.seed),
        "scale": list(result.scale) if result.scale is not None else None,
    }


def write_result(result: TestResult, fmt: str = "json") -> str:
    """Serialize a :class:`TestResult` with a fixed field order."""
    record = _result_dict(result)
    if fmt == "json":
        return json.dumps(record) + "\n"
    if fmt == "csv":
        scale = record["scale"]
        row = [
            record["statistic_name"],
            repr(record["statistic"]),
            repr(record["p_value"]),
            str(record["n_permutations"]),
            str(record["seed"]),
            "" if scale is None else f"{scale[0]} {scale[1]}",
        ]
        return ",".join(RESULT_FIELDS) + "\n" + ",".join(row) + "\n"
    raise InvalidData(f"format must be one of {FORMATS}, got {fmt!r}")


def read_result(text: str, fmt: str = "json") -> TestResult:
    if fmt == "json":
        record = json.loads(text)
    elif fmt == "csv":
        rows = list(csv.DictReader(io.StringIO(text)))
        if len(rows) != 1:
            raise ParseError(f"expected one result row, got {len(rows)}")
        raw = rows[0]
        record = {
            "statistic_name": raw["statistic_name"],
            "statistic": float(raw["statistic"]),
            "p_value": float(raw["p_value"]),
            "n_permutations": int(raw["n_permutations"]),
            "seed": int(raw["seed"]),
            "scale": [int(v) for v in raw["scale"].split()] if raw["scale"] else None,
        }
    else:
        raise InvalidData(f"format must be one of {FORMATS}, got {fmt!r}")
    scale = record.get("scale")
    return TestResult(
        statistic=record["statistic"],
        p_value=record["p_value"],
        n_permutations=record["n_permutations"],
        seed=record["seed"],
        statistic_name=record["statistic_name"],
        scale=tuple(scale) if scale is not None else None,
    )


def write_power(curve: PowerCurve, fmt: str = "csv") -> str:
    """Power table as CSV (``grid_value,power,stderr``) or JSON."""
    if fmt == "csv":
        lines = ["grid_value,power,stderr"]
        lines += [f"{g},{p!r},{s!r}" for g, p, s in curve.rows()]
        return "\n".join(lines) + "\n"
    if fmt == "json":
        record = {
            "statistic_name": curve.statistic_name,
            "sim_kind": curve.sim_kind,
            "axis": curve.axis.value,
            "alpha": curve.alpha,
            "replicates": curve.replicates,
            "n_permutations": curve.n_permutations,
            "seed": curve.seed,
            "kappa": curve.kappa,
            "rows": [
                {"grid_value": g, "power": p, "stderr": s} for g, p, s in curve.rows()
            ],
        }
        return json.dumps(record, indent=2) + "\n"
    raise InvalidData(f"format must be one of {FORMATS}, got {fmt!r}")


def read_power(text: str) -> PowerCurve:
    record = json.loads(text)
    rows = record["rows"]
    return PowerCurve(
        statistic_name=record["statistic_name"],
        sim_kind=record["sim_kind"],
        axis=Axis(record["axis"]),
        grid=[r["grid_value"] for r in rows],
        power=[r["power"] for r in rows],
        alpha=record["alpha"],
        replicates=record["replicates"],
        n_permutations=record["n_permutations"],
        seed=record["seed"],
        kappa=record["kappa"],
        rejections=[round(r["power"] * record["replicates"]) for r in rows],
    )


def write_bench(rows) -> str:
    """Timing table as CSV with columns ``statistic,n,seconds``."""
    lines = ["statistic,n,seconds"]
    lines += [f"{name},{n},{sec!r}" for name, n, sec in rows]
    return "\n".join(lines) + "\n"
