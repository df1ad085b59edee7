"""Tensor-product linear finite elements on the uniform grid.

The trial space is spanned by products of one-dimensional hat functions,
one per interior node; on each square grid cell these restrict to the
four bilinear shape functions.  Because the grid aligns with the
coefficient lattice, the coefficient is a single constant on every cell
and the stiffness integral is evaluated exactly: the element matrix is
that constant times a fixed 4 x 4 matrix (independent of h in 2D).  The
load uses a 2 x 2 Gauss rule per cell, which is exact for f = 1.

Interface crossings need no special treatment here: the weak form keeps
the solution continuous and balances fluxes between neighbouring cells
automatically, so every interior node (crossings included) carries an
unknown.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
import scipy.sparse as sp

from .analysis import ScalarField
from .coefficients import CoefficientField
from .grid import GridSpec, build_dof_map
from .solvers import SolverConfig, SparseSystem, factor_solve, finalize_csr

# Exact integral of grad(phi_p) . grad(phi_q) over one square cell for a
# unit coefficient; corner order SW, SE, NE, NW (counterclockwise).
UNIT_CELL_STIFFNESS = np.array(
    [
        [4.0, -1.0, -2.0, -1.0],
        [-1.0, 4.0, -1.0, -2.0],
        [-2.0, -1.0, 4.0, -1.0],
        [-1.0, -2.0, -1.0, 4.0],
    ]
) / 6.0

_GAUSS_POINT = 1.0 / np.sqrt(3.0)


@dataclass(frozen=True)
class FemProblem:
    """Grid, coefficient field, and source term of one variational solve.

    ``f`` is a vectorized callable f(x, y) accepting numpy arrays;
    None means the constant source 1, which is integrated exactly.
    """

    grid: GridSpec
    coeff: CoefficientField
    f: Callable | None = None

    def __post_init__(self):
        if self.grid.m != self.coeff.m:
            raise ValueError(
                f"grid and coefficient lattice disagree: m={self.grid.m} vs {self.coeff.m}"
            )


def element_stiffness(a_cell: float) -> np.ndarray:
    """Element stiffness matrix of one square cell with constant coefficient."""
    if a_cell <= 0.0:
        raise ValueError(f"cell coefficient must be positive, got {a_cell}")
    return a_cell * UNIT_CELL_STIFFNESS


def _cell_coefficients(grid: GridSpec, coeff: CoefficientField) -> np.ndarray:
    """Coefficient of every grid cell, indexed [ci, cj]; exact because each
    grid cell nests inside one coefficient cell."""
    N, m = grid.N, grid.m
    ci = np.arange(N)
    col = (ci * m) // N
    return np.asarray(coeff.values)[np.ix_(col, col)].T.copy()


def assemble_fem(problem: FemProblem) -> SparseSystem:
    """Assemble the stiffness matrix and load vector over interior nodes.

    Homogeneous Dirichlet values are eliminated, which for zero data
    simply drops the boundary rows and columns.  The matrix is symmetric
    by construction.
    """
    grid = problem.grid
    N, h = grid.N, grid.h
    dofmap = build_dof_map(grid, exclude_intersections=False)

    a_cell = _cell_coefficients(grid, problem.coeff).ravel()
    ci, cj = np.meshgrid(np.arange(N), np.arange(N), indexing="ij")
    ci, cj = ci.ravel(), cj.ravel()
    corners_i = (ci, ci + 1, ci + 1, ci)
    corners_j = (cj, cj, cj + 1, cj + 1)
    corner_dofs = np.stack(
        [dofmap.node_to_dof[ii, jj] for ii, jj in zip(corners_i, corners_j)], axis=1
    )

    rows, cols, data = [], [], []
    for p in range(4):
        for q in range(4):
            keep = (corner_dofs[:, p] >= 0) & (corner_dofs[:, q] >= 0)
            rows.append(corner_dofs[keep, p])
            cols.append(corner_dofs[keep, q])
            data.append(a_cell[keep] * UNIT_CELL_STIFFNESS[p, q])
    n = len(dofmap)
    matrix = finalize_csr(
        sp.coo_matrix(
            (np.concatenate(data), (np.concatenate(rows), np.concatenate(cols))),
            shape=(n, n),
        )
    )

    load_grid = np.zeros((N + 1, N + 1))
    if problem.f is None:
        for ii, jj in zip(corners_i, corners_j):
            np.add.at(load_grid, (ii, jj), h * h / 4.0)
    else:
        # map the 2 x 2 Gauss points into each cell; shape values are the
        # bilinear basis at those points, corner order as above
        for gx in (-_GAUSS_POINT, _GAUSS_POINT):
            for gy in (-_GAUSS_POINT, _GAUSS_POINT):
                x = (ci + 0.5 * (1.0 + gx)) * h
                y = (cj + 0.5 * (1.0 + gy)) * h
                fval = np.asarray(problem.f(x, y), dtype=float)
                sx, sy = 0.5 * (1.0 + gx), 0.5 * (1.0 + gy)
                shapes = (
                    (1.0 - sx) * (1.0 - sy),
                    sx * (1.0 - sy),
                    sx * sy,
                    (1.0 - sx) * sy,
                )
                w = h * h / 4.0
                for (ii, jj), phi in zip(zip(corners_i, corners_j), shapes):
                    np.add.at(load_grid, (ii, jj), w * phi * fval)
    rhs = load_grid[dofmap.dof_to_node[:, 0], dofmap.dof_to_node[:, 1]]
    return SparseSystem(matrix=matrix, rhs=rhs, dofmap=dofmap)


def solve_fem(problem: FemProblem, config: SolverConfig | None = None) -> ScalarField:
    """Solve the variational system and scatter onto the full node grid.

    Boundary nodes carry the Dirichlet value 0; every node is valid.
    """
    system = assemble_fem(problem)
    x = factor_solve(system.matrix, system.rhs, config)
    N = problem.grid.N
    values = np.zeros((N + 1, N + 1))
    values[system.dofmap.dof_to_node[:, 0], system.dofmap.dof_to_node[:, 1]] = x
    return ScalarField(values, np.ones((N + 1, N + 1), dtype=bool))
