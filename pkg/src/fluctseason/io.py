"""CSV ingestion, masked-series CSV output and report serialization."""

from __future__ import annotations

import csv
import json
import math
import warnings
from dataclasses import dataclass
from datetime import datetime
from pathlib import Path

import numpy as np

from .errors import EmptyFile, MissingValue, ParseError, UniformityWarning
from .series import MaskedSeries, SamplingPeriod, Series, make_series

MISSING_POLICIES = ("error", "interpolate_linear", "drop_leading_trailing")
SERIES_HEADER = ("index", "value", "defined")


@dataclass(frozen=True)
class CsvSpec:
    delimiter: str = ","
    has_header: bool = True
    value_column: str | int = 0
    index_column: str | int | None = None
    decimal_separator: str = "point"
    missing_policy: str = "error"

    def __post_init__(self):
        if len(self.delimiter) != 1:
            raise ValueError("delimiter must be a single character")
        if self.decimal_separator not in ("point", "comma"):
            raise ValueError("decimal_separator must be 'point' or 'comma'")
        if self.delimiter == self.decimal_char:
            raise ValueError("delimiter and decimal separator must differ")
        if self.missing_policy not in MISSING_POLICIES:
            raise ValueError(f"missing_policy must be one of {MISSING_POLICIES}")

    @property
    def decimal_char(self) -> str:
        return "," if self.decimal_separator == "comma" else "."


def _resolve_column(col, header, ncols):
    if isinstance(col, int):
        if not 0 <= col < ncols:
            raise ParseError(1, col, f"column index out of range (file has {ncols} columns)")
        return col
    if header is None:
        raise ParseError(1, col, "named column requires a header row")
    try:
        return header.index(col)
    except ValueError:
        raise ParseError(1, col, "no such column in header") from None


def _parse_number(text, spec, row, column):
    if spec.decimal_separator == "comma":
        text = text.replace(",", ".")
    try:
        value = float(text)
    except ValueError:
        raise ParseError(row, column, f"not a number: {text!r}") from None
    if not math.isfinite(value):
        raise ParseError(row, column, f"non-finite value: {text!r}")
    return value


def _parse_stamp(text, spec, row, column):
    try:
        return _parse_number(text, spec, row, column)
    except ParseError:
        pass
    try:
        return datetime.fromisoformat(text.strip()).timestamp()
    except ValueError:
        raise ParseError(row, column, f"index is neither numeric nor ISO timestamp: {text!r}") from None


def _fill_missing(values, rows, policy):
    arr = np.array([np.nan if v is None else v for v in values], dtype=float)
    missing = np.isnan(arr)
    if not missing.any():
        return arr
    if policy == "error":
        raise MissingValue(rows[int(np.flatnonzero(missing)[0])])
    ok = np.flatnonzero(~missing)
    if ok.size == 0:
        raise MissingValue(rows[0])
    lo, hi = ok[0], ok[-1]
    if policy == "drop_leading_trailing":
        arr = arr[lo:hi + 1]
        inner = np.flatnonzero(np.isnan(arr))
        if inner.size:
            raise MissingValue(rows[lo + int(inner[0])])
        return arr
    # interpolate_linear: interior gaps only
    if missing[0] or missing[-1]:
        raise MissingValue(rows[0] if missing[0] else rows[-1])
    gaps = np.flatnonzero(missing)
    arr[gaps] = np.interp(gaps, ok, arr[ok])
    return arr


def read_csv(path, spec: CsvSpec | None = None, period: SamplingPeriod | None = None,
             label: str | None = None) -> Series:
    """Read one column of a delimited file as a :class:`Series`.

    Row numbers in errors are 1-based file lines. An index column, when
    given, is only checked for uniform spacing (a :class:`UniformityWarning`
    is issued otherwise); computation stays index based.
    """
    spec = spec or CsvSpec()
    path = Path(path)
    with path.open(newline="", encoding="utf-8") as fh:
        rows = [r for r in csv.reader(fh, delimiter=spec.delimiter)]
    while rows and not any(c.strip() for c in rows[-1]):
        rows.pop()
    if not rows:
        raise EmptyFile(f"{path} is empty")
    ncols = len(rows[0])
    # in a one-column file a blank line is a missing cell, elsewhere it is skipped
    numbered = [(i + 1, r or [""]) for i, r in enumerate(rows) if ncols == 1 or any(c.strip() for c in r)]
    header = None
    if spec.has_header:
        header = [c.strip() for c in numbered[0][1]]
        numbered = numbered[1:]
    if not numbered:
        raise EmptyFile(f"{path} has no data rows")
    vcol = _resolve_column(spec.value_column, header, ncols)
    icol = None if spec.index_column is None else _resolve_column(spec.index_column, header, ncols)

    values, stamps, line_nos = [], [], []
    for line_no, row in numbered:
        if vcol >= len(row):
            raise ParseError(line_no, vcol, "row too short")
        cell = row[vcol].strip()
        values.append(None if cell == "" else _parse_number(cell, spec, line_no, vcol))
        line_nos.append(line_no)
        if icol is not None:
            if icol >= len(row) or not row[icol].strip():
                raise ParseError(line_no, icol, "missing index")
            stamps.append(_parse_stamp(row[icol], spec, line_no, icol))

    if len(stamps) > 2:
        steps = np.diff(stamps)
        if not np.allclose(steps, steps[0], rtol=1e-9, atol=0):
            warnings.warn(f"{path}: index column is not uniformly spaced", UniformityWarning, stacklevel=2)

    arr = _fill_missing(values, line_nos, spec.missing_policy)
    return make_series(arr, period or SamplingPeriod(), 0, path.stem if label is None else label)


def _fmt(value: float) -> str:
    return format(value, ".17g")


def write_series_csv(x: Series | MaskedSeries, path) -> None:
    """Write ``index,value,defined`` rows; undefined samples get an empty value."""
    if isinstance(x, Series):
        x = MaskedSeries.from_series(x)
    lines = [",".join(SERIES_HEADER)]
    for idx, v, ok in zip(x.indices, x.values, x.defined):
        lines.append(f"{idx},{_fmt(v) if ok else ''},{'true' if ok else 'false'}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_series_csv(path, period: SamplingPeriod | None = None, label: str | None = None) -> MaskedSeries:
    """Read a file produced by :func:`write_series_csv`, mask included."""
    path = Path(path)
    with path.open(newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise EmptyFile(f"{path} is empty")
    if tuple(c.strip() for c in rows[0]) != SERIES_HEADER:
        raise ParseError(1, 0, f"expected header {','.join(SERIES_HEADER)}")
    idx, vals, mask = [], [], []
    spec = CsvSpec()
    for line_no, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        if len(row) != 3:
            raise ParseError(line_no, len(row), "expected 3 fields")
        try:
            idx.append(int(row[0]))
        except ValueError:
            raise ParseError(line_no, 0, f"bad index {row[0]!r}") from None
        flag = row[2].strip().lower()
        if flag not in ("true", "false"):
            raise ParseError(line_no, 2, f"bad defined flag {row[2]!r}")
        mask.append(flag == "true")
        vals.append(_parse_number(row[1], spec, line_no, 1) if mask[-1] else np.nan)
    if not idx:
        raise EmptyFile(f"{path} has no data rows")
    if np.any(np.diff(idx) != 1):
        raise ParseError(2, 0, "index column must increase by one per row")
    return MaskedSeries(vals, mask, period or SamplingPeriod(), idx[0], path.stem if label is None else label)


def _plain(value):
    if isinstance(value, float) and value.is_integer():
        return int(value)
    return value


def report_dict(report) -> dict:
    """JSON-ready dict for an :class:`~fluctseason.detect.AnalysisReport`."""
    out = report.summary()
    out["estimated_period_samples"] = _plain(out["estimated_period_samples"])
    return out


def format_report_text(report) -> str:
    d = report_dict(report)
    lines = ["# configuration"]
    lines += [f"{k}: {v}" for k, v in d["config"].items()]
    lines.append("# decomposition")
    lines += [f"{k}: {v}" for k, v in d["decomposition"].items()]
    lines.append("# detection")
    lines.append(f"threshold: {d['threshold']!r}")
    lines.append(f"crossings: {' '.join(map(str, d['crossings'])) or '-'}")
    lines.append(f"intervals: {' '.join(map(str, d['intervals'])) or '-'}")
    lines.append(f"verdict: {d['verdict']}")
    lines.append(f"estimated_period_samples: {d['estimated_period_samples']}")
    lines.append(f"relative_dispersion: {d['relative_dispersion']}")
    return "\n".join(lines) + "\n"


def write_report(report, path, format: str = "json") -> None:
    """Write an analysis report as schema-v1 JSON or as a text summary."""
    if format == "json":
        text = json.dumps(report_dict(report), indent=2) + "\n"
    elif format == "text":
        text = format_report_text(report)
    else:
        raise ValueError(f"unknown report format {format!r}")
    Path(path).write_text(text, encoding="utf-8")


def read_report(path) -> dict:
    with Path(path).open(encoding="utf-8") as fh:
        data = json.load(fh)
    if data.get("schema_version") != 1:
        raise ParseError(1, "schema_version", "unsupported report schema")
    return data
