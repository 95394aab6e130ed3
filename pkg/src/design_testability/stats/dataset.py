from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence, Tuple

import numpy as np

from ..exceptions import InputError, MalformedDocument


@dataclass(frozen=True)
class Dataset:
    """Rectangular table of reals with named columns."""

    column_names: Tuple[str, ...]
    rows: np.ndarray

    def __post_init__(self):
        if len(set(self.column_names)) != len(self.column_names):
            raise InputError("duplicate column names")
        rows = np.asarray(self.rows, dtype=float)
        if rows.ndim != 2 or rows.shape[1] != len(self.column_names):
            raise InputError("rows must form an n x len(column_names) grid")
        if not np.all(np.isfinite(rows)):
            raise InputError("dataset contains missing or non-finite cells")
        rows.setflags(write=False)
        object.__setattr__(self, "rows", rows)

    @property
    def n(self) -> int:
        return self.rows.shape[0]

    def column(self, name: str) -> np.ndarray:
        try:
            return self.rows[:, self.column_names.index(name)]
        except ValueError:
            raise InputError(
                f"column '{name}' not in dataset (have: {', '.join(self.column_names)})"
            ) from None

    def columns(self, names: Sequence[str]) -> np.ndarray:
        return np.column_stack([self.column(n) for n in names]) if names else np.empty((self.n, 0))


def parse_csv(text: str, source: str = "<csv>") -> Dataset:
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise MalformedDocument("empty CSV", path=source) from None
    header = tuple(h.strip() for h in header)
    if not all(header):
        raise MalformedDocument("blank column name in header", path=source)
    rows = []
    for lineno, raw in enumerate(reader, start=2):
        if not raw or all(not cell.strip() for cell in raw):
            continue
        if len(raw) != len(header):
            raise MalformedDocument(
                f"expected {len(header)} cells, found {len(raw)}", path=source, line=lineno, column=1
            )
        try:
            rows.append([float(cell) for cell in raw])
        except ValueError:
            raise MalformedDocument("non-numeric or missing cell", path=source, line=lineno, column=1) from None
    return Dataset(header, np.asarray(rows, dtype=float).reshape(len(rows), len(header)))


def read_csv(path) -> Dataset:
    """Load a header-row CSV of numbers (dot decimals, no missing cells)."""
    p = Path(path)
    return parse_csv(p.read_text(encoding="utf-8"), source=str(p))
