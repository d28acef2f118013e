"""Readers for the stabkit CLI table formats.

Both formats carry a column list and typed rows; CSV cells are coerced to
float where possible and kept as strings otherwise (verdict labels), so a
table read from CSV and the same table read from JSON expose identical
content apart from CSV's textual nan.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "PlotDataError",
    "MissingColumnError",
    "EmptyGridError",
    "Table",
    "read_table",
]


class PlotDataError(Exception):
    """Base for figure-input problems."""


class MissingColumnError(PlotDataError):
    """A referenced column does not exist in the input table."""


class EmptyGridError(PlotDataError):
    """The input table has no data rows."""


@dataclass(frozen=True)
class Table:
    columns: tuple[str, ...]
    rows: tuple[tuple, ...]

    def __len__(self) -> int:
        return len(self.rows)

    def index(self, name: str) -> int:
        try:
            return self.columns.index(name)
        except ValueError:
            raise MissingColumnError(
                f"column {name!r} not in {list(self.columns)}"
            ) from None

    def column(self, name: str) -> list:
        i = self.index(name)
        return [row[i] for row in self.rows]

    def floats(self, name: str) -> np.ndarray:
        vals = self.column(name)
        out = np.empty(len(vals))
        for j, v in enumerate(vals):
            if v is None:
                out[j] = math.nan
            elif isinstance(v, str):
                try:
                    out[j] = float(v)
                except ValueError:
                    raise PlotDataError(
                        f"column {name!r} holds non-numeric value {v!r}"
                    ) from None
            else:
                out[j] = float(v)
        return out

    def require(self, *names: str) -> None:
        for name in names:
            self.index(name)


def _coerce(cell: str):
    if cell == "":
        return None
    try:
        return float(cell)
    except ValueError:
        return cell


def read_table(path: str) -> Table:
    """Read one CLI artifact (CSV or JSON, decided by extension)."""
    if str(path).endswith(".json"):
        with open(path) as fh:
            payload = json.load(fh)
        columns = tuple(payload["columns"])
        rows = tuple(tuple(row) for row in payload["rows"])
    else:
        with open(path, newline="") as fh:
            reader = csv.reader(fh)
            try:
                columns = tuple(next(reader))
            except StopIteration:
                raise EmptyGridError(f"{path}: no header row") from None
            rows = tuple(tuple(_coerce(c) for c in row) for row in reader)
    if not rows:
        raise EmptyGridError(f"{path}: table has no data rows")
    return Table(columns=columns, rows=rows)
