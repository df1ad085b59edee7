"""End-to-end experiment drivers: tables, comparisons, and field dumps.

These produce the machine-readable artifacts (CSV tables, JSON
comparison reports, CSV/PGM field dumps).  Output is deterministic: the
same inputs yield byte-identical files.
"""

from __future__ import annotations

import sys
from typing import Callable, Iterable, TextIO

import numpy as np

from .analysis import ConvergenceRow, ScalarField, cross_difference, observed_order, self_error
from .coefficients import CoefficientField
from .fdm import FdmProblem, solve_fdm
from .fem import FemProblem, solve_fem
from .grid import GridSpec
from .solvers import SolverConfig

METHODS = ("fem", "fdm")


def solve_with_method(
    method: str,
    field: CoefficientField,
    N: int,
    config: SolverConfig | None = None,
    f: Callable | None = None,
) -> ScalarField:
    """Solve one problem with the named discretization."""
    grid = GridSpec(N=N, m=field.m)
    if method == "fem":
        return solve_fem(FemProblem(grid, field, f), config)
    if method == "fdm":
        return solve_fdm(FdmProblem(grid, field, f), config)
    raise ValueError(f"method must be 'fem' or 'fdm', got {method!r}")


def run_table(
    field: CoefficientField,
    levels: Iterable[int],
    methods: Iterable[str] = METHODS,
    config: SolverConfig | None = None,
) -> dict[str, list[ConvergenceRow]]:
    """Self-convergence table rows for h = 2^-k over the given row levels.

    Each row compares the solve at its level with the solve one level
    finer, so the sweep solves ``max(levels) + 1`` as well.  Solutions
    are computed once per (method, level).
    """
    levels = sorted(set(int(k) for k in levels))
    if not levels:
        raise ValueError("no levels given")
    methods = list(methods)

    tables: dict[str, list[ConvergenceRow]] = {}
    for method in methods:
        cache: dict[int, ScalarField] = {}

        def at(k: int) -> ScalarField:
            if k not in cache:
                cache[k] = solve_with_method(method, field, 2**k, config)
            return cache[k]

        rows: list[ConvergenceRow] = []
        prev: ConvergenceRow | None = None
        for k in levels:
            e2, einf = self_error(at(k), at(k + 1))
            order2 = orderinf = None
            if prev is not None and prev.h == 2.0 ** (-(k - 1)):
                order2 = observed_order(prev.e2, e2)
                orderinf = observed_order(prev.einf, einf)
            row = ConvergenceRow(h=2.0**-k, e2=e2, order2=order2, einf=einf, orderinf=orderinf)
            rows.append(row)
            prev = row
        tables[method] = rows
    return tables


def compare_methods(
    field: CoefficientField,
    level: int,
    config: SolverConfig | None = None,
    threshold: float = 0.1,
) -> dict:
    """Solve with both methods at one level and quantify their difference.

    ``rel_inf`` is the max pointwise gap over max |fem solution|;
    solutions at the next level supply each method's self-errors.  The
    similar/divergent verdict is a reporting convenience controlled by
    ``threshold``, not a property of either scheme.
    """
    N = 2**level
    fields = {}
    errors = {}
    for method in METHODS:
        coarse = solve_with_method(method, field, N, config)
        fine = solve_with_method(method, field, 2 * N, config)
        e2, einf = self_error(coarse, fine)
        fields[method] = coarse
        errors[method] = {"e2": e2, "einf": einf}
    _, rel_inf = cross_difference(fields["fem"], fields["fdm"])
    return {
        "level": level,
        "grid_n": N,
        "m": field.m,
        "rel_inf": rel_inf,
        "threshold": threshold,
        "verdict": "similar" if rel_inf <= threshold else "divergent",
        "fem_self_error": errors["fem"],
        "fdm_self_error": errors["fdm"],
    }


def _fmt(value: float | None) -> str:
    return "" if value is None else f"{value:.10E}"


def write_table_csv(tables: dict[str, list[ConvergenceRow]], out: TextIO) -> None:
    """CSV with columns h,e2,order2,einf,orderinf,method, methods in order."""
    out.write("h,e2,order2,einf,orderinf,method\n")
    for method, rows in tables.items():
        for r in rows:
            out.write(
                f"{_fmt(r.h)},{_fmt(r.e2)},{_fmt(r.order2)},"
                f"{_fmt(r.einf)},{_fmt(r.orderinf)},{method}\n"
            )


def write_field_csv(field: ScalarField, out: TextIO) -> None:
    """One row per node: i,j,x,y,value,masked.

    ``masked`` is 1 where the field carries no value, and the value cell
    is then left blank.
    """
    N = field.N
    out.write("i,j,x,y,value,masked\n")
    for i in range(N + 1):
        for j in range(N + 1):
            x, y = i / N, j / N
            if field.mask[i, j]:
                out.write(f"{i},{j},{x:.10E},{y:.10E},{field.values[i, j]:.17E},0\n")
            else:
                out.write(f"{i},{j},{x:.10E},{y:.10E},,1\n")


def field_to_pgm(field: ScalarField) -> bytes:
    """8-bit binary PGM heatmap, min-max normalized over the valid nodes.

    Scanlines run top to bottom (image convention), so the picture has
    the usual Cartesian orientation.  Masked nodes are black; a constant
    field comes out all black as well.
    """
    values = field.values
    mask = field.mask
    pixels = np.zeros(values.shape, dtype=np.uint8)
    if mask.any():
        valid = values[mask]
        lo, hi = float(valid.min()), float(valid.max())
        if hi > lo:
            scaled = np.rint((values - lo) / (hi - lo) * 255.0)
            pixels = np.where(mask, np.clip(scaled, 0, 255), 0).astype(np.uint8)
    rows = pixels.T[::-1, :]  # pixel row = constant y, top first
    header = f"P5\n{values.shape[0]} {values.shape[1]}\n255\n".encode("ascii")
    return header + rows.tobytes()


def print_table(tables: dict[str, list[ConvergenceRow]], out: TextIO = sys.stdout) -> None:
    """Human-readable table with orders rounded to two decimals."""
    for method, rows in tables.items():
        out.write(f"{method}\n")
        out.write(f"{'h':>12} {'e2':>12} {'ord':>6} {'einf':>12} {'ord':>6}\n")
        for r in rows:
            o2 = "" if r.order2 is None else f"{r.order2:.2f}"
            oi = "" if r.orderinf is None else f"{r.orderinf:.2f}"
            out.write(f"{r.h:>12.6f} {r.e2:>12.4E} {o2:>6} {r.einf:>12.4E} {oi:>6}\n")
