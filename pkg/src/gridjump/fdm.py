"""Upwind finite differences for the interface-aligned grid.

Away from the interface lattice the classic 5-point scheme applies,

    a_ij (u_W + u_E + u_S + u_N - 4 u_C) = -h^2 f_ij .

At a node on a single vertical interface line the differential equation
is replaced by a flux-matching row: the one-sided derivative from each
side is formed with the second-order 3-point upwind formula and the two
conormal fluxes are set equal.  With a- and a+ the coefficients one grid
step to the left and right, the row reads

    -a- u_{i-2} + 4 a- u_{i-1} - 3 (a- + a+) u_i + 4 a+ u_{i+1} - a+ u_{i+2} = 0,

and the horizontal-line row is its transpose along y.  Nodes where two
interface lines cross are excluded from the unknown set entirely: no row
is written there and no stencil reaches them (their axis neighbours at
distance 1 and 2 are never crossings when N/m >= 2), so the scheme never
needs a value at those points.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
import scipy.sparse as sp

from .analysis import ScalarField
from .coefficients import CoefficientField
from .grid import GridSpec, PointClass, build_dof_map, classification_grid, classify
from .solvers import SolverConfig, SparseSystem, factor_solve, finalize_csr


@dataclass(frozen=True)
class FdmProblem:
    """Grid, coefficient field, and source term of one difference solve.

    ``f`` is a vectorized callable f(x, y) sampled at grid nodes; None
    means the constant source 1.
    """

    grid: GridSpec
    coeff: CoefficientField
    f: Callable | None = None

    def __post_init__(self):
        if self.grid.m != self.coeff.m:
            raise ValueError(
                f"grid and coefficient lattice disagree: m={self.grid.m} vs {self.coeff.m}"
            )


@dataclass(frozen=True)
class StencilRow:
    """One assembled equation: weighted nodes on the left, rhs on the right."""

    center: tuple[int, int]
    entries: tuple[tuple[tuple[int, int], float], ...]
    rhs: float


def one_sided_dx(values: Sequence[float], h: float, direction: str = "backward") -> float:
    """Second-order 3-point one-sided first derivative.

    ``values`` holds the samples ordered from the evaluation point away
    from it: (u_0, u_-1, u_-2) for backward, (u_0, u_+1, u_+2) for
    forward.  Exact for polynomials up to degree 2.
    """
    if h <= 0.0:
        raise ValueError(f"h must be positive, got {h}")
    u0, u1, u2 = (float(v) for v in values)
    if direction == "backward":
        return (3.0 * u0 - 4.0 * u1 + u2) / (2.0 * h)
    if direction == "forward":
        return (-3.0 * u0 + 4.0 * u1 - u2) / (2.0 * h)
    raise ValueError(f"direction must be 'backward' or 'forward', got {direction!r}")


def interior_row(
    grid: GridSpec, coeff: CoefficientField, f: Callable | None, i: int, j: int
) -> StencilRow:
    """5-point row at a plain interior node."""
    if classify(grid, i, j) != PointClass.INTERIOR:
        raise ValueError(f"node ({i}, {j}) is not an interior node")
    h = grid.h
    x, y = i * h, j * h
    a = coeff.sample(x, y)
    f_val = 1.0 if f is None else float(f(x, y))
    entries = (
        ((i - 1, j), a),
        ((i + 1, j), a),
        ((i, j - 1), a),
        ((i, j + 1), a),
        ((i, j), -4.0 * a),
    )
    return StencilRow((i, j), entries, -h * h * f_val)


def interface_v_row(grid: GridSpec, coeff: CoefficientField, i: int, j: int) -> StencilRow:
    """Flux-matching row at a node on a vertical interface line."""
    if classify(grid, i, j) != PointClass.INTERFACE_V:
        raise ValueError(f"node ({i}, {j}) is not on a vertical interface line")
    h = grid.h
    x, y = i * h, j * h
    a_minus = coeff.sample(x - h, y)
    a_plus = coeff.sample(x + h, y)
    entries = (
        ((i - 2, j), -a_minus),
        ((i - 1, j), 4.0 * a_minus),
        ((i, j), -3.0 * (a_minus + a_plus)),
        ((i + 1, j), 4.0 * a_plus),
        ((i + 2, j), -a_plus),
    )
    return StencilRow((i, j), entries, 0.0)


def interface_h_row(grid: GridSpec, coeff: CoefficientField, i: int, j: int) -> StencilRow:
    """Flux-matching row at a node on a horizontal interface line."""
    if classify(grid, i, j) != PointClass.INTERFACE_H:
        raise ValueError(f"node ({i}, {j}) is not on a horizontal interface line")
    h = grid.h
    x, y = i * h, j * h
    a_minus = coeff.sample(x, y - h)
    a_plus = coeff.sample(x, y + h)
    entries = (
        ((i, j - 2), -a_minus),
        ((i, j - 1), 4.0 * a_minus),
        ((i, j), -3.0 * (a_minus + a_plus)),
        ((i, j + 1), 4.0 * a_plus),
        ((i, j + 2), -a_plus),
    )
    return StencilRow((i, j), entries, 0.0)


def _scatter(rows, cols, data, center_dofs, ti, tj, weights, dofmap, cls):
    """Append one stencil leg for a batch of rows.

    Targets without an unknown must be boundary nodes (value 0, dropped);
    anything else would mean the stencil reached an interface crossing.
    """
    target = dofmap.node_to_dof[ti, tj]
    keep = target >= 0
    dropped = ~keep
    if np.any(cls[ti[dropped], tj[dropped]] != int(PointClass.BOUNDARY)):
        raise AssertionError("stencil referenced an excluded non-boundary node")
    rows.append(center_dofs[keep])
    cols.append(target[keep])
    data.append(weights[keep])


def assemble_fdm(problem: FdmProblem) -> SparseSystem:
    """Assemble one row per unknown, dispatched on the node class.

    The result is square over the (N-1)^2 - (m-1)^2 unknowns and
    nonsymmetric in general.  Stencil legs that land on the boundary
    contribute the known value 0 and are dropped.
    """
    grid = problem.grid
    N, m, h = grid.N, grid.m, grid.h
    cls = classification_grid(grid)
    dofmap = build_dof_map(grid, exclude_intersections=True)
    vals = np.asarray(problem.coeff.values)

    rows, cols, data = [], [], []
    rhs = np.zeros(len(dofmap))

    ii, jj = np.nonzero(cls == int(PointClass.INTERIOR))
    center = dofmap.node_to_dof[ii, jj]
    a = vals[(jj * m) // N, (ii * m) // N]
    if problem.f is None:
        rhs[center] = -h * h
    else:
        rhs[center] = -h * h * np.asarray(problem.f(ii * h, jj * h), dtype=float)
    for di, dj, w in ((-1, 0, a), (1, 0, a), (0, -1, a), (0, 1, a), (0, 0, -4.0 * a)):
        _scatter(rows, cols, data, center, ii + di, jj + dj, w, dofmap, cls)

    ii, jj = np.nonzero(cls == int(PointClass.INTERFACE_V))
    center = dofmap.node_to_dof[ii, jj]
    a_minus = vals[(jj * m) // N, ((ii - 1) * m) // N]
    a_plus = vals[(jj * m) // N, ((ii + 1) * m) // N]
    for di, w in (
        (-2, -a_minus),
        (-1, 4.0 * a_minus),
        (0, -3.0 * (a_minus + a_plus)),
        (1, 4.0 * a_plus),
        (2, -a_plus),
    ):
        _scatter(rows, cols, data, center, ii + di, jj, w, dofmap, cls)

    ii, jj = np.nonzero(cls == int(PointClass.INTERFACE_H))
    center = dofmap.node_to_dof[ii, jj]
    a_minus = vals[((jj - 1) * m) // N, (ii * m) // N]
    a_plus = vals[((jj + 1) * m) // N, (ii * m) // N]
    for dj, w in (
        (-2, -a_minus),
        (-1, 4.0 * a_minus),
        (0, -3.0 * (a_minus + a_plus)),
        (1, 4.0 * a_plus),
        (2, -a_plus),
    ):
        _scatter(rows, cols, data, center, ii, jj + dj, w, dofmap, cls)

    n = len(dofmap)
    matrix = finalize_csr(
        sp.coo_matrix(
            (np.concatenate(data), (np.concatenate(rows), np.concatenate(cols))),
            shape=(n, n),
        )
    )
    return SparseSystem(matrix=matrix, rhs=rhs, dofmap=dofmap)


def solve_fdm(problem: FdmProblem, config: SolverConfig | None = None) -> ScalarField:
    """Solve the difference system and scatter onto the full node grid.

    Boundary nodes carry the Dirichlet value 0; the validity mask is
    False exactly at the interface crossings, where the scheme computes
    nothing.
    """
    system = assemble_fdm(problem)
    x = factor_solve(system.matrix, system.rhs, config)
    N = problem.grid.N
    values = np.zeros((N + 1, N + 1))
    values[system.dofmap.dof_to_node[:, 0], system.dofmap.dof_to_node[:, 1]] = x
    mask = classification_grid(problem.grid) != int(PointClass.INTERSECTION)
    return ScalarField(values, mask)
