"""Piecewise-constant coefficient fields on an m x m lattice of cells.

``values[r, c]`` is the coefficient on the open cell
``(c/m, (c+1)/m) x (r/m, (r+1)/m)``: the row index r counts cells upward
from the bottom edge, the column index c rightward from the left edge.
The same bottom-to-top orientation is used in the JSON file format, so a
field reads like the plotted picture and there is no top/bottom flip to
keep track of.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class CoefficientField:
    """Strictly positive constants on the m x m cell lattice."""

    m: int
    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        if vals.ndim != 2 or vals.shape[0] != vals.shape[1]:
            raise ValueError(f"coefficient array must be square, got shape {vals.shape}")
        if vals.shape[0] != self.m:
            raise ValueError(f"array shape {vals.shape} does not match m={self.m}")
        if self.m < 2:
            raise ValueError(f"m must be >= 2, got {self.m}")
        if not np.all(np.isfinite(vals)) or np.any(vals <= 0.0):
            raise ValueError("coefficient values must be finite and strictly positive")
        vals = vals.copy()
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    def sample(self, x: float, y: float) -> float:
        """Coefficient at a point strictly inside one cell.

        Points on a cell edge (x*m or y*m integral) are rejected: the
        value there is ambiguous and callers are expected to probe cell
        interiors only.
        """
        if not (0.0 < x < 1.0 and 0.0 < y < 1.0):
            raise ValueError(f"point ({x}, {y}) is not interior to the unit square")
        xs, ys = x * self.m, y * self.m
        if xs == math.floor(xs) or ys == math.floor(ys):
            raise ValueError(f"point ({x}, {y}) lies on a cell edge")
        return float(self.values[int(ys), int(xs)])

    def scaled(self, factor: float) -> "CoefficientField":
        """New field with every cell value multiplied by ``factor``."""
        return CoefficientField(self.m, np.asarray(self.values) * factor)

    def transposed(self) -> "CoefficientField":
        """Field reflected across the diagonal y = x."""
        return CoefficientField(self.m, np.asarray(self.values).T)


def checkerboard(m: int, a_even: float, a_odd: float) -> CoefficientField:
    """Alternating two-value field; the bottom-left cell gets ``a_even``.

    Cell (r, c) receives ``a_even`` when r + c is even and ``a_odd``
    otherwise.
    """
    r, c = np.meshgrid(np.arange(m), np.arange(m), indexing="ij")
    vals = np.where((r + c) % 2 == 0, float(a_even), float(a_odd))
    return CoefficientField(m, vals)


def uniform(m: int, value: float = 1.0) -> CoefficientField:
    """Constant field, useful as a smooth-problem baseline."""
    return CoefficientField(m, np.full((m, m), float(value)))


def from_matrix(values) -> CoefficientField:
    """Field from an explicit m x m array given bottom row first."""
    vals = np.asarray(values, dtype=float)
    if vals.ndim != 2 or vals.shape[0] != vals.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {vals.shape}")
    return CoefficientField(vals.shape[0], vals)


def load_coefficient(path) -> CoefficientField:
    """Read a field from a JSON file.

    Expected layout::

        {"m": 4, "rows_bottom_to_top": [[...], [...], [...], [...]]}

    with m rows of m strictly positive numbers, bottom row first.
    """
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    if not isinstance(doc, dict) or "m" not in doc or "rows_bottom_to_top" not in doc:
        raise ValueError(f"{path}: expected keys 'm' and 'rows_bottom_to_top'")
    m = doc["m"]
    if not isinstance(m, int):
        raise ValueError(f"{path}: 'm' must be an integer, got {m!r}")
    rows = np.asarray(doc["rows_bottom_to_top"], dtype=float)
    if rows.ndim != 2 or rows.shape != (m, m):
        raise ValueError(
            f"{path}: 'rows_bottom_to_top' must be an {m}x{m} array, got shape {rows.shape}"
        )
    return CoefficientField(m, rows)


def save_coefficient(field: CoefficientField, path) -> None:
    """Write a field in the JSON layout accepted by load_coefficient."""
    doc = {"m": field.m, "rows_bottom_to_top": np.asarray(field.values).tolist()}
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")
