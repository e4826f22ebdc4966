"""Reading samples from delimited text, quantile-table files and reports."""
from __future__ import annotations

import json
import math
import re
from datetime import datetime, timezone
from pathlib import Path
from typing import Optional, Union

import numpy as np

from . import __version__
from .errors import (
    CorruptTableError,
    DataParseError,
    DomainError,
    IncompatibleTableError,
    TableError,
)
from .inference import QuantileTable
from .robust_estimators import Sample
from .sampling import RngSpec

__all__ = [
    "TABLE_SCHEMA_VERSION",
    "REPORT_SCHEMA_VERSION",
    "read_sample",
    "save_table",
    "load_table",
    "table_to_dict",
    "table_from_dict",
    "make_report",
]

TABLE_SCHEMA_VERSION = 1
REPORT_SCHEMA_VERSION = 1
_TABLE_KIND = "robust_ttest.quantile_table"

# plain decimal notation only: no locale separators, no nan/inf, no underscores
_NUMBER = re.compile(r"^[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?$")
_DELIMITERS = (",", "\t", ";")

PathLike = Union[str, Path]


def _parse_number(cell: str) -> Optional[float]:
    cell = cell.strip()
    if not _NUMBER.match(cell):
        return None
    value = float(cell)
    return value if math.isfinite(value) else None


def _split_lines(text: str):
    rows = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if line.strip():
            rows.append((lineno, line))
    if not rows:
        return [], None
    first = rows[0][1]
    delim = next((d for d in _DELIMITERS if d in first), None)
    if delim is None:
        return [(no, [line.strip()]) for no, line in rows], None
    return [(no, [c.strip() for c in line.split(delim)]) for no, line in rows], delim


def read_sample(path: PathLike, column: Union[str, int, None] = None) -> Sample:
    """Read one column of a delimited text file into a :class:`Sample`.

    The delimiter (comma, tab or semicolon) is taken from the first
    non-blank line.  That line is a header when its cell in the selected
    column is not a number.  ``column`` is a header name or a 0-based
    index (an all-digit string counts as an index unless it names a header).
    """
    path = Path(path)
    try:
        text = path.read_text()
    except FileNotFoundError:
        raise DataParseError(f"{path}: no such file") from None
    except OSError as exc:
        raise DataParseError(f"{path}: {exc.strerror}") from None

    rows, _ = _split_lines(text)
    if not rows:
        raise DataParseError(f"{path}: file contains no data")
    first_no, first_cells = rows[0]

    index: Optional[int] = None
    named = False
    if column is None:
        index = 0
    elif isinstance(column, int):
        index = column
    elif column in first_cells and _parse_number(column) is None:
        index = first_cells.index(column)
        named = True
    elif str(column).isdigit():
        index = int(column)
    else:
        raise DataParseError(f"{path}: no column named {column!r} in the header")
    if index < 0 or index >= len(first_cells):
        raise DataParseError(
            f"{path}: column index {index} out of range (row {first_no} has "
            f"{len(first_cells)} columns)")

    has_header = named or _parse_number(first_cells[index]) is None
    body = rows[1:] if has_header else rows

    values = []
    for lineno, cells in body:
        if index >= len(cells):
            raise DataParseError(f"{path}: row {lineno} has no column {index}")
        value = _parse_number(cells[index])
        if value is None:
            raise DataParseError(
                f"{path}: row {lineno}, column {index}: cannot parse {cells[index]!r} as a number")
        values.append(value)
    if not values:
        raise DataParseError(f"{path}: selected column is empty")
    return Sample(tuple(values))


def table_to_dict(table: QuantileTable) -> dict:
    doc = {
        "schema_version": TABLE_SCHEMA_VERSION,
        "kind": _TABLE_KIND,
        "statistic": "(median - mu) / MAD",
        "n": table.n,
        "reps": table.reps,
        "rng": {"seed": table.rng.seed, "stream": table.rng.stream},
        "created_at": table.created_at,
        "probs": list(table.probs),
        "quantiles": list(table.quantiles),
    }
    if table.values is not None:
        doc["values"] = table.values.tolist()
    return doc


_REQUIRED = ("n", "reps", "rng", "created_at", "probs", "quantiles")


def table_from_dict(doc: dict) -> QuantileTable:
    if not isinstance(doc, dict):
        raise CorruptTableError("table document must be a JSON object")
    version = doc.get("schema_version")
    if version != TABLE_SCHEMA_VERSION:
        raise IncompatibleTableError(
            f"unsupported table schema version {version!r} (expected {TABLE_SCHEMA_VERSION})")
    missing = [k for k in _REQUIRED if k not in doc]
    if missing:
        raise IncompatibleTableError(f"table is missing required fields: {', '.join(missing)}")
    try:
        rng = RngSpec(int(doc["rng"]["seed"]), int(doc["rng"].get("stream", 0)))
        values = doc.get("values")
        return QuantileTable(
            n=doc["n"],
            probs=doc["probs"],
            quantiles=doc["quantiles"],
            reps=doc["reps"],
            rng=rng,
            created_at=str(doc["created_at"]),
            values=None if values is None else np.asarray(values, dtype=float),
        )
    except (DomainError, TypeError, KeyError, ValueError) as exc:
        raise CorruptTableError(f"invalid table: {exc}") from None


def save_table(table: QuantileTable, path: PathLike) -> None:
    # json writes floats with repr(), which round-trips exactly
    Path(path).write_text(json.dumps(table_to_dict(table), indent=1) + "\n")


def load_table(path: PathLike) -> QuantileTable:
    path = Path(path)
    try:
        doc = json.loads(path.read_text())
    except FileNotFoundError:
        raise TableError(f"{path}: no such file") from None
    except json.JSONDecodeError as exc:
        raise CorruptTableError(f"{path}: not valid JSON ({exc})") from None
    return table_from_dict(doc)


def make_report(command: str, arguments: dict, seed: Optional[int], results) -> dict:
    """Wrap a results payload with command metadata.

    Only ``generated_at`` varies between identical invocations.
    """
    return {
        "schema_version": REPORT_SCHEMA_VERSION,
        "tool": "robust_ttest",
        "version": __version__,
        "command": {"name": command, "arguments": arguments, "seed": seed},
        "results": results,
        "generated_at": datetime.now(timezone.utc).isoformat(timespec="seconds"),
    }
