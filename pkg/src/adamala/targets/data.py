"""CSV ingestion for return series and regression datasets.

Dialect: comma separator, ``.`` decimal point, optional single header row,
UTF-8.  Parse failures raise :class:`DataError` citing the 1-based line
number.
"""

from __future__ import annotations

import csv
import math

import numpy as np

__all__ = ["DataError", "load_returns_csv", "load_regression_csv"]


class DataError(ValueError):
    """Malformed dataset; ``line`` holds the offending 1-based line number."""

    def __init__(self, message: str, line: int | None = None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


def _read_rows(path) -> list[tuple[int, list[str]]]:
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            return [
                (lineno, row)
                for lineno, row in enumerate(csv.reader(fh), start=1)
                if row and any(cell.strip() for cell in row)
            ]
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc.strerror}") from exc


def _parse_cell(cell: str, lineno: int) -> float:
    try:
        value = float(cell)
    except ValueError:
        raise DataError(f"non-numeric value {cell.strip()!r}", line=lineno) from None
    if not math.isfinite(value):
        raise DataError(f"non-finite value {cell.strip()!r}", line=lineno)
    return value


def _is_header(row: list[str]) -> bool:
    for cell in row:
        try:
            float(cell)
        except ValueError:
            return True
    return False


def load_returns_csv(path) -> np.ndarray:
    """Load a single-column return series."""
    rows = _read_rows(path)
    if rows and _is_header(rows[0][1]):
        rows = rows[1:]
    if not rows:
        raise DataError(f"{path} contains no data rows")
    values = np.empty(len(rows))
    for i, (lineno, row) in enumerate(rows):
        if len(row) != 1:
            raise DataError(f"expected 1 column, found {len(row)}", line=lineno)
        values[i] = _parse_cell(row[0], lineno)
    return values


def load_regression_csv(path) -> tuple[np.ndarray, np.ndarray]:
    """Load a design matrix plus binary response (d feature columns then y)."""
    rows = _read_rows(path)
    if rows and _is_header(rows[0][1]):
        rows = rows[1:]
    if not rows:
        raise DataError(f"{path} contains no data rows")
    width = len(rows[0][1])
    if width < 2:
        raise DataError(
            "need at least one feature column and a response column",
            line=rows[0][0],
        )
    x_mat = np.empty((len(rows), width - 1))
    y = np.empty(len(rows))
    for i, (lineno, row) in enumerate(rows):
        if len(row) != width:
            raise DataError(f"expected {width} columns, found {len(row)}", line=lineno)
        for j in range(width - 1):
            x_mat[i, j] = _parse_cell(row[j], lineno)
        y[i] = _parse_cell(row[-1], lineno)
        if y[i] not in (0.0, 1.0):
            raise DataError(f"response must be 0 or 1, found {row[-1].strip()!r}", line=lineno)
    return x_mat, y
